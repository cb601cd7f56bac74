#pragma once

#include "qsdes/metrics.hpp"
#include "qsdes/types.hpp"

#include <filesystem>
#include <string>

namespace qsdes {

/// Canonical design file layout: header "x1,...,xm,o1,...,om", then n rows of 2m
/// integers, comma-separated, LF line endings. A sidecar document at
/// "<path>.meta.json" carries the construction metadata and the metrics.

std::string design_csv(const QSDesign& d);
std::string metadata_json(const QSDesign& d, const MetricsReport& r,
                          const std::string& design_filename);

/// Write the CSV and its metadata sidecar; returns the computed metrics.
MetricsReport write_design(const QSDesign& d, const std::filesystem::path& path);

/// Parse a design file; throws ParseError naming the offending row/column.
/// Metadata is restored from the sidecar when present.
QSDesign read_design(const std::filesystem::path& path);

std::filesystem::path metadata_path(const std::filesystem::path& design_path);

}  // namespace qsdes
