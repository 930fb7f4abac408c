#pragma once

#include <map>
#include <ostream>
#include <string>

// End-to-end verification suite behind `rir selftest`. Each check prints
// one [PASS]/[FAIL] line; the return value is the failure count.
namespace rir::acceptance {

// The deterministic artifact set selftest writes (filename -> bytes).
std::map<std::string, std::string> build_artifacts();

int run_all(const std::string& outdir, std::ostream& out);

}  // namespace rir::acceptance
