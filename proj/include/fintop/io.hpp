/**
 * Text and JSON formats for every input object, and JSON serialization of
 * results and certificates.
 *
 * Every parser auto-detects JSON (first non-blank character '{') and
 * otherwise reads a line format in which '#' starts a comment. Malformed
 * input raises InputError carrying the 1-based line and column.
 *
 *  poset     "a < b < c" chains, or bare elements (several per line)
 *            {"elements": [...], "relations": [["a","b"], ...]}
 *  complex   one facet per line, vertices separated by blanks
 *            {"facets": [["u","v"], ...]}
 *  relation  "x ~ y"
 *            {"source": <poset>, "target": <poset>, "pairs": [["x","y"], ...]}
 *  map       "x -> y"
 *            {"map": {"x": "y", ...}}
 *  cover     "part <name>" header, then member lines (one facet per line for
 *            complex covers; blank-separated elements for poset covers)
 *            {"parts": {"name": [members...]}} with members given as
 *            strings or as facet arrays
 *  points    CSV, one point per row; an optional header row and an optional
 *            leading id column. The first row is a header when one of its
 *            coordinate fields is not a number. An id column is present when
 *            the header names it id/name/label or the first data field is not
 *            a number; otherwise points get ids p0, p1, ...
 */
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fintop/complex.hpp"
#include "fintop/cylinder.hpp"
#include "fintop/homology.hpp"
#include "fintop/mapper.hpp"
#include "fintop/nerve.hpp"
#include "fintop/poset.hpp"
#include "fintop/reduction.hpp"

namespace fintop::io {

using json = nlohmann::ordered_json;

/// Throws InputError naming the path when it cannot be read.
std::string read_file(const std::filesystem::path& path);

Poset parse_poset(std::string_view text);
SimplicialComplex parse_complex(std::string_view text);

/// Line format (or JSON without embedded posets) against the given ends.
Relation parse_relation(std::string_view text, const Poset& source, const Poset& target);
/// JSON with embedded "source" and "target" posets.
Relation parse_relation(std::string_view text);

MonotoneMap parse_map(std::string_view text, const Poset& source, const Poset& target);

/// Part name and its member lines, each a list of identifiers.
using CoverParts = std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>;
CoverParts parse_cover(std::string_view text);
/// Members flattened to elements.
PosetCover poset_cover(const Poset& base, const CoverParts& parts, bool take_open_hull = false);
/// Member lines read as facets.
ComplexCover complex_cover(const SimplicialComplex& base, const CoverParts& parts);

PointCloud parse_points(std::string_view csv);

Poset load_poset(const std::filesystem::path& path);
SimplicialComplex load_complex(const std::filesystem::path& path);
CoverParts load_cover(const std::filesystem::path& path);
PointCloud load_points(const std::filesystem::path& path);

// --- output -----------------------------------------------------------------

/// Poset text format: bare elements, then one Hasse edge per line.
std::string to_text(const Poset& p);
/// One facet per line.
std::string to_text(const SimplicialComplex& k);

/// Graphviz digraph of the Hasse diagram, edges pointing up.
std::string to_dot(const Poset& p, const std::string& name);

json to_json(const Poset& p);
json to_json(const ElementSet& s);
json to_json(const SimplicialComplex& k);
/// Face poset plus a "dim" map.
json to_json(const RegularCWComplex& c);
json to_json(const HomologyProfile& h);
json to_json(const HomologyComparison& c);
json to_json(const ReductionStep& s);
json to_json(const ReductionCertificate& c);
json to_json(const TrivialityVerdict& v);
json to_json(const HypothesisReport& r);
json to_json(const EquivalenceReport& r);
json to_json(const RelationHomologyReport& r);
json to_json(const CoverClassification& c);
json to_json(const NerveReport& r);
json to_json(const CompletionPoset& c);
json to_json(const CompletionReport& r);
json to_json(const MapperResult& r);

/// Inverse of to_json(ReductionCertificate); InputError on malformed steps.
ReductionCertificate certificate_from_json(const json& j);

// --- fixtures -----------------------------------------------------------------

/**
 * A fixture is a directory holding input files under fixed names
 * (poset.txt, source.txt, target.txt, relation.txt, map.txt, complex.txt,
 * cover.txt, points.csv, any of them also as .json) and an optional
 * fixture.json: {"theorem": "<target>", "expect": "<status>", "params": {...}}.
 */
struct Fixture
{
    std::filesystem::path directory;
    std::string name;
    std::optional<std::string> theorem;
    std::optional<std::string> expect;
    json params = json::object();

    /// Path of `stem` with extension .txt, .json or .csv, if present.
    std::optional<std::filesystem::path> file(std::string_view stem) const;
    /// As file(), but throws InputError naming the fixture when missing.
    std::filesystem::path require(std::string_view stem) const;
};

Fixture load_fixture(const std::filesystem::path& directory);
/// Sub-directories of `root` in name order (each one a fixture).
std::vector<Fixture> list_fixtures(const std::filesystem::path& root);

} // namespace fintop::io
