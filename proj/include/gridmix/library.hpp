#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridmix/design.hpp"
#include "gridmix/generator.hpp"

namespace gridmix {

struct LibraryEntry {
    std::vector<double> concentrations;  // one per outlet
    std::vector<double> velocities;      // one per outlet
    std::uint64_t seed = 0;
    GridDesign design;
};

inline constexpr double kDefaultLibraryEpsilon = 0.01;

/// Largest absolute componentwise difference.
double max_norm_distance(std::span<const double> a, std::span<const double> b);

/// Designs whose outlet vectors pairwise differ by more than `epsilon` in
/// the max norm. Insertion is greedy: the first of two close vectors wins.
struct DesignLibrary {
    int rows = 0;
    int cols = 0;
    double epsilon = kDefaultLibraryEpsilon;
    std::vector<LibraryEntry> entries;

    /// Appends the entry unless some existing entry lies within epsilon.
    /// Throws Error when the vector length differs from existing entries.
    bool try_insert(LibraryEntry entry);
};

using LogSink = std::function<void(const std::string&)>;

/// Generates and simulates `count` designs with seeds params.seed + i on
/// `jobs` worker threads, then inserts them in seed order. Failed designs
/// are reported through `log` and skipped.
DesignLibrary populate_library(const GeneratorParams& params, int count, double epsilon, int jobs = 1,
                               const LogSink& log = {});

struct QueryHit {
    std::size_t index = 0;
    double distance = 0.0;
};

/// The k entries nearest to `target` in the max norm, nearest first; ties
/// keep insertion order. Throws Error when the target length differs.
std::vector<QueryHit> query_library(const DesignLibrary& lib, std::span<const double> target, std::size_t k);

/// JSON lines: a header line, then one entry per line.
std::string write_library(const DesignLibrary& lib);
/// Throws ParseError with the offending line number.
DesignLibrary read_library(std::string_view text);

}  // namespace gridmix
