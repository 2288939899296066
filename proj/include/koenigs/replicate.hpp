#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "koenigs/json_io.hpp"

namespace koenigs {

struct Claim {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ReplicationReport {
    std::string example;
    std::uint64_t seed = 1;
    std::vector<Claim> claims;
    double seconds = 0;

    bool all_pass() const;
    // throws ClaimFailed naming the first failing claim
    void require_all() const;
};

const std::vector<std::string>& example_ids();

// Builds the example and runs its claim checklist. Grids are drawn from seed.
ReplicationReport replicate(std::string_view exampleId, std::uint64_t seed = 1);

json to_json(const ReplicationReport& r);

}  // namespace koenigs
