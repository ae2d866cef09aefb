#include "expara/errors.hpp"

namespace expara {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::config: return "config error";
    case ErrorKind::overflow: return "numerical overflow";
    case ErrorKind::unsupported: return "unsupported combination";
    case ErrorKind::domain: return "invalid argument";
  }
  return "error";
}

}  // namespace expara
