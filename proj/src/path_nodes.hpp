#pragma once

#include "sympidx/pathlib.hpp"

#include <json.hpp>

#include <string>

namespace sympidx {

struct PathNode {
    virtual ~PathNode() = default;
    virtual int n() const = 0;
    virtual std::string kind() const = 0;
    virtual Mat eval(double t) const = 0;
    // Path-spec JSON; internal generators throw SchemaError.
    virtual nlohmann::json spec() const;
};

}  // namespace sympidx
