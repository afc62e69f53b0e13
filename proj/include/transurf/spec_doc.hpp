#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transurf/catalog.hpp"
#include "transurf/geometry.hpp"
#include "transurf/verify.hpp"

namespace transurf {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct ParsedSpec {
  Surface surface;
  Metric metric;
  std::string canonical;  // sorted-key compact JSON of the input document
};

/// Parse a surface-spec JSON document. Kinds: translation (f1,f2,g1,g2 or
/// alpha/beta component triples), homothetical (f, g, axis), generic (X),
/// cylindrical (base, direction) and family (family, params). Throws
/// ParseError for malformed JSON or expressions, SpecError for contract
/// violations, naming the offending key.
ParsedSpec parse_surface_spec(std::string_view text);

/// Inverse of parse_surface_spec for non-family surfaces.
std::string serialize_surface_spec(const Surface& S, const Metric& M);

/// FNV-1a 64 of the canonical document as 16 lower-case hex digits.
std::string spec_digest(std::string_view canonical);

/// "NSxNT" -> (ns, nt); SpecError on malformed input.
std::pair<int, int> parse_grid_counts(std::string_view text);

/// Wavefront OBJ text: ns*nt `v` lines (row-major, s outer) and
/// 2(ns-1)(nt-1) triangles, 9 significant digits, LF endings. Degenerate or
/// causality-violating nodes abort with DegenerateError naming the first one.
/// Output does not depend on `threads`.
std::string obj_text(const Surface& S, const Metric& M, const GridSpec& grid, unsigned threads = 1);
void export_obj(const Surface& S, const Metric& M, const GridSpec& grid, const std::string& path,
                unsigned threads = 1);

/// `s,t,K,H,EGmF2,character` CSV.
std::string samples_csv(const SampleSet& set);

std::string verify_report_json(const std::string& digest, const std::vector<ConstancyReport>& reports,
                               const std::optional<std::string>& samples_path);
std::string probe_report_json(const ProbeResult& result);
std::string families_json(const std::vector<FamilySpec>& families);

void write_text_file(const std::string& path, std::string_view contents);

}  // namespace transurf
