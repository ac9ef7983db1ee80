/**
 * Command reports and the verification targets run against fixtures.
 *
 * A RunReport collects the certificates backing its result. finalize()
 * replays every one of them from scratch; a report can only stay Certified
 * if all replays succeed and end where they should.
 */
#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fintop/complex.hpp"
#include "fintop/cylinder.hpp"
#include "fintop/io.hpp"
#include "fintop/nerve.hpp"
#include "fintop/poset.hpp"
#include "fintop/reduction.hpp"

namespace fintop {

/// 0 Certified, 1 Refuted, 2 Unknown or Error.
int exit_code(Status s);
/// Exit code for malformed input.
inline constexpr int kInputErrorExit = 3;

/// Parses "Certified", "Refuted", ... ; InputError otherwise.
Status status_from_string(std::string_view s);

/// FNV-1a 64-bit digest of `content`, as 16 hex digits.
std::string content_hash(std::string_view content);

class RunReport
{
public:
    explicit RunReport(std::string command);

    std::string command;
    Status status = Status::Unknown;
    std::string message;
    io::json result = io::json::object();

    /// Records an input file and its digest (reads the file).
    void add_input(const std::filesystem::path& path);
    /// A certificate to replay from `start`; without `expected_end` the
    /// replay has to end at a single point.
    void attach(std::string name, Poset start, ReductionCertificate certificate,
                std::optional<Poset> expected_end = std::nullopt);
    void attach(std::string name, SimplicialComplex start, ReductionCertificate certificate,
                std::optional<SimplicialComplex> expected_end = std::nullopt);
    void compare(std::string name, const HomologyComparison& comparison);

    /// Replays every attached certificate. A failure turns Certified into
    /// Error. Idempotent.
    void finalize();
    bool finalized() const { return finalized_; }

    std::size_t certificate_count() const { return poset_certs_.size() + complex_certs_.size(); }

    /// Without timing, the JSON is byte-identical for identical inputs.
    io::json to_json(bool with_timing = true) const;

private:
    struct PosetCertificate
    {
        std::string name;
        Poset start;
        ReductionCertificate certificate;
        std::optional<Poset> expected_end;
        std::string replay_error;
    };
    struct ComplexCertificate
    {
        std::string name;
        SimplicialComplex start;
        ReductionCertificate certificate;
        std::optional<SimplicialComplex> expected_end;
        std::string replay_error;
    };

    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<PosetCertificate> poset_certs_;
    std::vector<ComplexCertificate> complex_certs_;
    std::vector<std::pair<std::string, HomologyComparison>> comparisons_;
    std::chrono::steady_clock::time_point started_;
    double elapsed_ms_ = 0.0;
    bool finalized_ = false;
};

/// Verification targets, in the order they are listed by the CLI.
const std::vector<std::string>& verify_targets();

struct VerifyOptions
{
    SearchOptions search;
    /// Overrides the fixture's "degree" parameter for relation-homology.
    std::optional<int> degree;
};

/**
 * Runs `target` on the inputs of `fixture` and finalizes the report.
 * Throws InputError for an unknown target or missing/malformed inputs.
 *
 *  source-side, target-side      hypotheses on one side and the
 *                                gamma-collapse of the cylinder onto it
 *  relation-equivalence          both sides, both collapses, homology
 *  relation-homology             homology form up to a degree
 *  nerve-good, nerve-trivial-faces, nerve-quasigood
 *                                cover of a poset or of a complex
 *  completion-homology           cover of a complex and its completion
 *  dictionary                    subdivision invariance, opposite order,
 *                                collapse translation
 */
RunReport verify_fixture(const io::Fixture& fixture, const std::string& target, const VerifyOptions& options = {});

/// Relation targets: source-side, target-side, relation-equivalence, relation-homology.
RunReport verify_relation(const Relation& r, const std::string& target, const VerifyOptions& options = {});
/// Cover targets: nerve-good, nerve-trivial-faces, nerve-quasigood.
RunReport verify_cover(const PosetCover& cover, const std::string& target, const VerifyOptions& options = {});
/// The completion-homology target.
RunReport verify_completion(const ComplexCover& cover, const VerifyOptions& options = {});

/// The relation described by a fixture: source, target and a relation or map file.
Relation fixture_relation(const io::Fixture& fixture);

} // namespace fintop
