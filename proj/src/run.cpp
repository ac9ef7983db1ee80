#include "fintop/run.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "fintop/errors.hpp"
#include "fintop/homology.hpp"
#include "fintop/nerve.hpp"

namespace fintop {

int exit_code(Status s)
{
    switch (s) {
    case Status::Certified: return 0;
    case Status::Refuted: return 1;
    case Status::Unknown:
    case Status::Error: return 2;
    }
    return 2;
}

Status status_from_string(std::string_view s)
{
    for (Status v : {Status::Certified, Status::Refuted, Status::Unknown, Status::Error})
        if (s == to_string(v))
            return v;
    throw InputError("unknown status '" + std::string(s) + "'");
}

std::string content_hash(std::string_view content)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunReport::RunReport(std::string command_name) : command(std::move(command_name)), started_(std::chrono::steady_clock::now())
{
}

void RunReport::add_input(const std::filesystem::path& path)
{
    inputs_.emplace_back(path.generic_string(), content_hash(io::read_file(path)));
}

void RunReport::attach(std::string name, Poset start, ReductionCertificate certificate, std::optional<Poset> expected_end)
{
    poset_certs_.push_back({std::move(name), std::move(start), std::move(certificate), std::move(expected_end), {}});
    finalized_ = false;
}

void RunReport::attach(std::string name, SimplicialComplex start, ReductionCertificate certificate,
                       std::optional<SimplicialComplex> expected_end)
{
    complex_certs_.push_back({std::move(name), std::move(start), std::move(certificate), std::move(expected_end), {}});
    finalized_ = false;
}

void RunReport::compare(std::string name, const HomologyComparison& comparison)
{
    comparisons_.emplace_back(std::move(name), comparison);
}

void RunReport::finalize()
{
    if (finalized_)
        return;
    std::string failure;
    for (auto& c : poset_certs_) {
        auto r = replay(c.start, c.certificate);
        if (!r.ok)
            c.replay_error = "step " + std::to_string(r.failed_step) + ": " + r.error;
        else if (c.expected_end && !(r.result == *c.expected_end))
            c.replay_error = "replay does not end at the expected poset";
        else if (!c.expected_end && r.result.size() != 1)
            c.replay_error = "replay ends with " + std::to_string(r.result.size()) + " elements, not one";
        if (!c.replay_error.empty() && failure.empty())
            failure = c.name + ": " + c.replay_error;
    }
    for (auto& c : complex_certs_) {
        auto r = replay(c.start, c.certificate);
        if (!r.ok)
            c.replay_error = "step " + std::to_string(r.failed_step) + ": " + r.error;
        else if (c.expected_end && !(r.result == *c.expected_end))
            c.replay_error = "replay does not end at the expected complex";
        else if (!c.expected_end && !(r.result.num_vertices() == 1 && r.result.size() == 1))
            c.replay_error = "replay does not end at a single vertex";
        if (!c.replay_error.empty() && failure.empty())
            failure = c.name + ": " + c.replay_error;
    }
    if (!failure.empty() && status == Status::Certified) {
        status = Status::Error;
        message = "certificate failed to replay: " + failure;
    }
    elapsed_ms_ = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started_).count();
    finalized_ = true;
}

io::json RunReport::to_json(bool with_timing) const
{
    io::json inputs = io::json::array();
    for (const auto& [path, hash] : inputs_)
        inputs.push_back({{"path", path}, {"fnv1a64", hash}});
    io::json certs = io::json::array();
    for (const auto& c : poset_certs_)
        certs.push_back({{"name", c.name},
                         {"kind", "poset"},
                         {"steps", c.certificate.size()},
                         {"replayed", finalized_ && c.replay_error.empty()},
                         {"certificate", io::to_json(c.certificate)}});
    for (const auto& c : complex_certs_)
        certs.push_back({{"name", c.name},
                         {"kind", "simplicial"},
                         {"steps", c.certificate.size()},
                         {"replayed", finalized_ && c.replay_error.empty()},
                         {"certificate", io::to_json(c.certificate)}});
    io::json comparisons = io::json::array();
    for (const auto& [name, cmp] : comparisons_)
        comparisons.push_back({{"name", name}, {"equal", cmp.equal}, {"differences", cmp.differences}});
    io::json out = {{"command", command},
                    {"inputs", std::move(inputs)},
                    {"status", to_string(status)},
                    {"message", message},
                    {"result", result},
                    {"certificates", std::move(certs)},
                    {"homology_comparisons", std::move(comparisons)}};
    if (with_timing)
        out["timing_ms"] = elapsed_ms_;
    return out;
}

const std::vector<std::string>& verify_targets()
{
    static const std::vector<std::string> targets = {
        "source-side",     "target-side",         "relation-equivalence", "relation-homology",   "nerve-good",
        "nerve-trivial-faces", "nerve-quasigood", "completion-homology",  "dictionary"};
    return targets;
}

Relation fixture_relation(const io::Fixture& f)
{
    if (auto combined = f.file("relation"); combined && !f.file("source")) {
        // JSON with embedded ends.
        return io::parse_relation(io::read_file(*combined));
    }
    Poset source = io::load_poset(f.require("source"));
    Poset target = io::load_poset(f.require("target"));
    if (auto rel = f.file("relation"))
        return io::parse_relation(io::read_file(*rel), source, target);
    if (auto map = f.file("map"))
        return io::parse_map(io::read_file(*map), source, target).relation();
    throw InputError("fixture '" + f.name + "' has neither a relation nor a map file");
}

namespace {

void add_inputs(RunReport& report, const io::Fixture& f)
{
    for (const char* stem : {"poset", "complex", "source", "target", "relation", "map", "cover", "points"})
        if (auto p = f.file(stem))
            report.add_input(*p);
}

void attach_equivalence(RunReport& report, const Relation& r, const EquivalenceReport& eq)
{
    if (!eq.to_source && !eq.to_target)
        return;
    CylinderPoset cyl = build_cylinder(r);
    if (eq.to_source)
        report.attach("collapse-to-source", cyl.poset, *eq.to_source, prefixed(r.source(), kSourcePrefix));
    if (eq.to_target)
        report.attach("collapse-to-target", cyl.poset, *eq.to_target, prefixed(r.target(), kTargetPrefix));
}

void one_side(RunReport& report, const Relation& r, bool source, const SearchOptions& opts)
{
    HypothesisReport hyp = source ? check_source_side(r, opts) : check_target_side(r, opts);
    report.status = hyp.status;
    report.result["hypotheses"] = io::to_json(hyp);
    if (hyp.status != Status::Certified) {
        if (const auto* f = hyp.first_failure())
            report.message = "hypothesis not certified at '" + f->element + "'";
        return;
    }
    CylinderPoset cyl = build_cylinder(r);
    GammaCollapse gc = source ? gamma_collapse_to_source(cyl, opts) : gamma_collapse_to_target(cyl, opts);
    if (!gc.certificate) {
        report.status = Status::Error;
        report.message = "hypotheses certified but the collapse was refused at '" + gc.failing_element + "': " + gc.reason;
        return;
    }
    const Poset& end = source ? r.source() : r.target();
    report.attach(source ? "collapse-to-source" : "collapse-to-target", cyl.poset, *gc.certificate,
                  prefixed(end, source ? kSourcePrefix : kTargetPrefix));
    HomologyComparison cmp = same_homology(homology(cyl.poset), homology(end));
    report.compare(source ? "cylinder vs source" : "cylinder vs target", cmp);
    report.result["cylinder_size"] = cyl.poset.size();
    if (!cmp.equal) {
        report.status = Status::Error;
        report.message = "collapse certified but homology differs";
    } else {
        report.message = source ? "cylinder collapses onto the source" : "cylinder collapses onto the target";
    }
}

PosetCover fixture_cover(const io::Fixture& f)
{
    auto parts = io::load_cover(f.require("cover"));
    if (auto k = f.file("complex"))
        return io::complex_cover(io::load_complex(*k), parts).face_cover();
    return io::poset_cover(io::load_poset(f.require("poset")), parts);
}

void nerve_target(RunReport& report, const PosetCover& cover, NerveVariant variant, const SearchOptions& opts)
{
    NerveReport nr = verify_nerve_equivalence(cover, variant, opts);
    report.status = nr.status;
    report.message = nr.message;
    report.result = io::to_json(nr);
    if (nr.equivalence) {
        std::optional<Relation> rel;
        if (variant == NerveVariant::QuasiGood)
            rel = completion_relation(cover, completion_poset(cover));
        else
            rel = trivial_faces_relation(cover, trivial_faces(cover, nr.classification));
        attach_equivalence(report, *rel, *nr.equivalence);
    }
    report.compare("base vs nerve object", nr.comparison);

    if (variant == NerveVariant::GoodPoset && nr.classification.kind == CoverKind::Good) {
        // For a good cover every face is trivial and each point's faces have a top.
        TrivialFaces tf = trivial_faces(cover, nr.classification);
        const bool same = tf.poset == nerve_poset(cover);
        bool maxima = true;
        for (const auto& x : cover.base().ids()) {
            ElementSet faces = faces_containing(cover, tf, x);
            Poset sub = induced_subposet(faces);
            maxima = maxima && maximal_elements(sub).size() == 1;
        }
        report.result["trivial_faces_equal_nerve"] = same;
        report.result["faces_containing_have_maximum"] = maxima;
        if ((!same || !maxima) && report.status == Status::Certified) {
            report.status = Status::Error;
            report.message = "good cover whose trivial faces differ from the nerve";
        }
    }
}

void dictionary_target(RunReport& report, const io::Fixture& f, const SearchOptions& opts)
{
    std::optional<SimplicialComplex> complex;
    Poset p;
    if (auto k = f.file("complex")) {
        complex = io::load_complex(*k);
        p = face_poset(*complex);
    } else {
        p = io::load_poset(f.require("poset"));
    }
    bool ok = true;
    auto check = [&](const std::string& name, const HomologyComparison& cmp) {
        report.compare(name, cmp);
        ok = ok && cmp.equal;
    };
    const HomologyProfile hp = homology(p);
    report.result["homology"] = io::to_json(hp);
    check("poset vs barycentric subdivision", same_homology(hp, homology(barycentric_poset(p))));
    if (complex) {
        const HomologyProfile hk = homology(*complex);
        check("complex vs face poset", same_homology(hk, hp));
        check("complex vs barycentric subdivision", same_homology(hk, homology(barycentric_complex(*complex))));
    }
    const SimplicialComplex kp = order_complex(p);
    const bool opposite_equal = kp == order_complex(opposite(p));
    report.result["order_complex_of_opposite_equal"] = opposite_equal;
    ok = ok && opposite_equal;

    // Collapse direction: a poset collapse induces a simplicial collapse.
    if (homology(p, true).is_zero()) {
        TrivialityVerdict v = is_collapsible(p, opts);
        report.result["poset_collapse"] = to_string(v.value);
        if (v.value == Verdict::Trivial) {
            report.attach("poset-collapse", p, v.certificate);
            auto translated = to_simplicial_collapse(p, v.certificate);
            report.result["translated"] = translated.has_value();
            if (translated)
                report.attach("order-complex-collapse", kp, *translated);
            ok = ok && translated.has_value();
        }
        if (complex) {
            auto sc = simplicial_collapse_to_point(*complex, opts);
            report.result["complex_collapse"] = sc.has_value();
            if (sc)
                report.attach("complex-collapse", *complex, *sc);
        }
    } else {
        report.result["poset_collapse"] = "skipped: non-zero reduced homology";
    }
    report.status = ok ? Status::Certified : Status::Error;
    report.message = ok ? "dictionary properties hold" : "a dictionary property failed";
}

} // namespace

RunReport verify_relation(const Relation& r, const std::string& target, const VerifyOptions& options)
{
    RunReport report("verify " + target);
    const SearchOptions& opts = options.search;
    if (target == "source-side" || target == "target-side") {
        one_side(report, r, target == "source-side", opts);
    } else if (target == "relation-equivalence") {
        EquivalenceReport eq = verify_relation_equivalence(r, opts);
        report.status = eq.status;
        report.message = eq.message;
        report.result["equivalence"] = io::to_json(eq);
        attach_equivalence(report, r, eq);
        report.compare("source vs target", eq.comparison);
    } else if (target == "relation-homology") {
        // Default: every degree in which either side can have homology.
        int degree = options.degree ? *options.degree : static_cast<int>(std::max(r.source().size(), r.target().size()));
        RelationHomologyReport hr = verify_relation_homology(r, degree);
        report.status = hr.status;
        report.message = hr.message;
        report.result["homology_form"] = io::to_json(hr);
        report.compare("source vs target up to degree " + std::to_string(degree), hr.comparison);
    } else {
        throw InputError("'" + target + "' is not a relation target");
    }
    report.finalize();
    return report;
}

RunReport verify_cover(const PosetCover& cover, const std::string& target, const VerifyOptions& options)
{
    RunReport report("verify " + target);
    if (target == "nerve-good")
        nerve_target(report, cover, NerveVariant::GoodPoset, options.search);
    else if (target == "nerve-trivial-faces")
        nerve_target(report, cover, NerveVariant::TrivialFaces, options.search);
    else if (target == "nerve-quasigood")
        nerve_target(report, cover, NerveVariant::QuasiGood, options.search);
    else
        throw InputError("'" + target + "' is not a cover target");
    report.finalize();
    return report;
}

RunReport verify_completion(const ComplexCover& cover, const VerifyOptions& options)
{
    RunReport report("verify completion-homology");
    CompletionReport cr = verify_completion_homology(cover, options.search);
    report.status = cr.status;
    report.message = cr.message;
    report.result = io::to_json(cr);
    if (cr.poset_level.equivalence) {
        const PosetCover& pc = cover.face_cover();
        attach_equivalence(report, completion_relation(pc, completion_poset(pc)), *cr.poset_level.equivalence);
    }
    report.compare("complex vs completion", cr.comparison);
    report.finalize();
    return report;
}

RunReport verify_fixture(const io::Fixture& f, const std::string& target, const VerifyOptions& options)
{
    auto known = verify_targets();
    if (std::find(known.begin(), known.end(), target) == known.end())
        throw InputError("unknown verification target '" + target + "'");
    RunReport report("verify " + target);
    if (target == "source-side" || target == "target-side" || target == "relation-equivalence" ||
        target == "relation-homology") {
        VerifyOptions o = options;
        if (!o.degree && f.params.contains("degree"))
            o.degree = f.params.at("degree").get<int>();
        report = verify_relation(fixture_relation(f), target, o);
    } else if (target == "completion-homology") {
        auto parts = io::load_cover(f.require("cover"));
        report = verify_completion(io::complex_cover(io::load_complex(f.require("complex")), parts), options);
    } else if (target == "dictionary") {
        dictionary_target(report, f, options.search);
        report.finalize();
    } else {
        report = verify_cover(fixture_cover(f), target, options);
    }
    add_inputs(report, f);
    report.result["fixture"] = f.name;
    return report;
}

} // namespace fintop
