#pragma once

#include "sympidx/classical.hpp"
#include "sympidx/config.hpp"
#include "sympidx/lagrangian.hpp"
#include "sympidx/maslov.hpp"
#include "sympidx/pathlib.hpp"
#include "sympidx/rotation.hpp"
#include "sympidx/spectral.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sympidx {

using Json = nlohmann::json;

// Reads and parses a JSON file; IoError / SchemaError.
Json load_json(const std::string& file);

Mat parse_matrix(const Json& j);
Json matrix_to_json(const Mat& m);

// Builds a path from a path-spec document and validates it eagerly.
SympPath parse_spec(const Json& doc, const Config& cfg = {});
Json to_spec(const SympPath& path);

// {"path": <path-spec, optional>, "base": matrix | "horizontal" | "vertical"}
FramePath parse_frame(const Json& doc, const Config& cfg = {});

struct FramePair {
    FramePath l1;
    FramePath l2;
};
// {"l1": <frame>, "l2": <frame>}
FramePair parse_frame_pair(const Json& doc, const Config& cfg = {});
bool is_frame_pair(const Json& doc);

Json to_json(const Config& cfg);
Json to_json(const SpectralData& sd);
Json to_json(const FirstKindSpectrum& fk);
Json to_json(const RotationLift& lift);
Json to_json(const IndexReport& rep);
Json to_json(const ClassicalReport& rep);
Json to_json(const std::vector<Crossing>& cs);
Json to_json(const ClmReport& rep);

}  // namespace sympidx
