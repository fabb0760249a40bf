#pragma once

#include "sympidx/config.hpp"

#include <string>
#include <vector>

namespace sympidx {

struct VerifyRow {
    int criterion = 0;
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

// Reference examples with pinned values; a row that throws is reported as failed.
std::vector<VerifyRow> verify_paper(const Config& cfg = {});

}  // namespace sympidx
