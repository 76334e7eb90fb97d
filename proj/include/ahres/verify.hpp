#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ahres {

struct CriterionOutcome {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // one-line measurement summary
};

// Runs the verification battery: seven numbered criteria, each writing its
// artifact(s) into out_dir, plus verify_summary.json.  One status line per
// criterion goes to log.  All randomness derives from seed, and `jobs` only
// controls worker-thread count: the artifacts are byte-identical for any
// value of it.  Returns the outcomes in criterion order.
std::vector<CriterionOutcome> run_verify(const std::filesystem::path& out_dir,
                                         std::uint64_t seed, int jobs, std::ostream& log);

} // namespace ahres
