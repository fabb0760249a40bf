#pragma once

#include "sympidx/config.hpp"
#include "sympidx/pathlib.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sympidx {

enum class ClassicalKind { CZ, Long, LiuL0, SpsLong, SpsLiu, Concavity };
enum class Route { Direct, Comparison, PerturbationHeuristic };

std::string_view to_string(ClassicalKind k);
std::string_view to_string(Route r);

struct ClassicalReport {
    ClassicalKind kind = ClassicalKind::CZ;
    int value = 0;
    Route route = Route::Direct;
    std::map<std::string, double> details;
    std::vector<int> candidates;
};

enum class LongRoute { Comparison, Perturbation, Both };

ClassicalReport conley_zehnder(const SympPath& path, const Config& cfg = {});
ClassicalReport long_index(const SympPath& path, LongRoute route = LongRoute::Comparison,
                           const Config& cfg = {});
ClassicalReport liu_l0_nondegenerate(const SympPath& path, const Config& cfg = {});
ClassicalReport l0_index(const SympPath& path, const Config& cfg = {});
ClassicalReport l0_concavity(const SympPath& path, const Config& cfg = {});

struct SpsReport {
    ClassicalReport long_sps;
    ClassicalReport liu_sps;
};

SpsReport sps_indices(const SympPath& path, const Config& cfg = {});

// A path from I to m: block rotations up to the normalization matrix, then the tail.
SympPath path_from_identity(const Mat& m, const Config& cfg = {});

// Rotational perturbation t -> exp(-sign * eps * t J) path(t).
SympPath rotational_perturbation(const SympPath& path, double eps, int sign);

}  // namespace sympidx
