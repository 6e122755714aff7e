#include "semidens/estimate.hpp"

#include "semidens/errors.hpp"

namespace semidens {

Method method_from_name(const std::string& name) {
  if (name == "kernel") return Method::kernel;
  if (name == "et1") return Method::et1;
  if (name == "et2") return Method::et2;
  if (name == "et3") return Method::et3;
  if (name == "et4") return Method::et4;
  if (name == "jones") return Method::jones;
  if (name == "hg") return Method::hg;
  if (name == "local1") return Method::local1;
  if (name == "local2") return Method::local2;
  throw ValidationError("unknown method '" + name +
                        "'; expected kernel, et1..et4, jones, hg, local1, or "
                        "local2");
}

const char* method_name(Method m) {
  switch (m) {
    case Method::kernel: return "kernel";
    case Method::et1: return "et1";
    case Method::et2: return "et2";
    case Method::et3: return "et3";
    case Method::et4: return "et4";
    case Method::jones: return "jones";
    case Method::hg: return "hg";
    case Method::local1: return "local1";
    case Method::local2: return "local2";
  }
  return "?";
}

bool is_et_method(Method m) {
  return m == Method::et1 || m == Method::et2 || m == Method::et3 ||
         m == Method::et4;
}

int et_order(Method m) {
  switch (m) {
    case Method::et1: return 1;
    case Method::et2: return 2;
    case Method::et3: return 3;
    case Method::et4: return 4;
    default:
      throw ValidationError(std::string("method ") + method_name(m) +
                            " has no exponential-family order");
  }
}

}  // namespace semidens
