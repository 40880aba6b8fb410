#include "ydgrow/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "ydgrow/error.hpp"

namespace ydgrow::kernels {
namespace {

const Ops* select(const char* name) {
  if (!name || !*name) return nullptr;
  if (std::strcmp(name, "scalar") == 0) return &scalar_ops();
  if (std::strcmp(name, "avx2") == 0) {
    if (!avx2_available()) fail(Errc::BadConfig, "avx2 kernels requested but unavailable");
    return &avx2_ops();
  }
  fail(Errc::BadConfig, std::string("unknown kernel backend '") + name + "'");
}

const Ops* forced = nullptr;

const Ops& autodetect() {
  static const Ops& chosen = []() -> const Ops& {
    if (const Ops* env = select(std::getenv("YDGROW_KERNELS"))) return *env;
    return avx2_available() ? avx2_ops() : scalar_ops();
  }();
  return chosen;
}

}  // namespace

const Ops& active_ops() { return forced ? *forced : autodetect(); }

void force_backend(const char* name) { forced = select(name); }

}  // namespace ydgrow::kernels
