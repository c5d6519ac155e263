#include "lowtw/error.hpp"

namespace lowtw {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::argument: return "argument";
    case ErrorKind::domain: return "domain";
    case ErrorKind::embedding: return "embedding";
    case ErrorKind::resource: return "resource";
    case ErrorKind::io: return "io";
    case ErrorKind::validation: return "validation";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace lowtw
