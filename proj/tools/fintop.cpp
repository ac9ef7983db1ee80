// Command-line front end. Every command produces a RunReport; exit codes:
// 0 Certified/success, 1 Refuted, 2 Unknown or Error, 3 malformed input.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fintop/errors.hpp"
#include "fintop/generators.hpp"
#include "fintop/homology.hpp"
#include "fintop/io.hpp"
#include "fintop/mapper.hpp"
#include "fintop/nerve.hpp"
#include "fintop/reduction.hpp"
#include "fintop/run.hpp"

using namespace fintop;

namespace {

struct Globals
{
    std::size_t budget = 100000;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string out;

    SearchOptions search() const { return SearchOptions{budget}; }
};

struct Output
{
    RunReport report;
    std::string text; // human-readable rendering
    std::string dot;  // empty when the command has no graph
};

void emit(const Globals& g, const std::string& content)
{
    if (g.out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f)
        throw InputError("cannot write " + g.out);
    f << content;
}

int finish(const Globals& g, Output& o)
{
    o.report.finalize();
    if (g.format == "json") {
        emit(g, o.report.to_json().dump(2) + "\n");
    } else if (g.format == "text") {
        std::ostringstream os;
        os << o.report.command << ": " << to_string(o.report.status);
        if (!o.report.message.empty())
            os << " (" << o.report.message << ")";
        os << "\n" << o.text;
        emit(g, os.str());
    } else {
        if (o.dot.empty())
            throw InputError("'" + o.report.command + "' has no dot output");
        emit(g, o.dot);
    }
    return exit_code(o.report.status);
}

Status verdict_status(Verdict v)
{
    switch (v) {
    case Verdict::Trivial: return Status::Certified;
    case Verdict::NonTrivial: return Status::Refuted;
    case Verdict::Unknown: return Status::Unknown;
    }
    return Status::Unknown;
}

void step_log(std::ostream& os, const ReductionCertificate& c, int depth = 0)
{
    const std::string indent(2 * depth + 2, ' ');
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const ReductionStep& s = c.steps[i];
        os << indent << i + 1 << ". " << to_string(s.kind) << " ";
        if (s.kind == StepKind::SimplicialCollapse) {
            os << simplex_label(s.face) << " into " << simplex_label(s.coface) << "\n";
            continue;
        }
        os << s.element;
        if (!s.witness.empty())
            os << " (witness " << s.witness << ")";
        os << "\n";
        if (s.evidence) {
            os << indent << "   evidence: " << to_string(s.evidence->value) << " by " << to_string(s.evidence->basis)
               << "\n";
            step_log(os, s.evidence->certificate, depth + 2);
        }
    }
}

std::string homology_table(const HomologyProfile& h)
{
    std::ostringstream os;
    os << (h.reduced ? "reduced homology\n" : "homology\n") << "  degree  betti  torsion\n";
    for (std::size_t k = 0; k < h.groups.size(); ++k) {
        os << "  " << k << "       " << h.groups[k].betti << "      ";
        if (h.groups[k].torsion.empty())
            os << "-";
        for (std::size_t t = 0; t < h.groups[k].torsion.size(); ++t)
            os << (t ? "," : "") << "Z/" << h.groups[k].torsion[t];
        os << "\n";
    }
    os << "  " << h.summary() << "\n";
    return os.str();
}

// --poset FILE | --complex FILE
struct ShapeInput
{
    std::string poset;
    std::string complex;

    void add(CLI::App* cmd)
    {
        auto* p = cmd->add_option("--poset", poset, "poset file")->check(CLI::ExistingFile);
        auto* k = cmd->add_option("--complex", complex, "simplicial complex file")->check(CLI::ExistingFile);
        p->excludes(k);
    }
    void require(const std::string& command) const
    {
        if (poset.empty() && complex.empty())
            throw InputError(command + ": one of --poset or --complex is required");
    }
};

// --source, --target with --relation or --map, or --fixture.
struct RelationInput
{
    std::string source, target, relation, map, fixture;

    void add(CLI::App* cmd)
    {
        cmd->add_option("--source", source, "source poset file")->check(CLI::ExistingFile);
        cmd->add_option("--target", target, "target poset file")->check(CLI::ExistingFile);
        cmd->add_option("--relation", relation, "relation file")->check(CLI::ExistingFile);
        cmd->add_option("--map", map, "monotone map file")->check(CLI::ExistingFile);
        cmd->add_option("--fixture", fixture, "fixture directory")->check(CLI::ExistingDirectory);
    }

    Relation load(RunReport& report) const
    {
        if (!fixture.empty())
            return fixture_relation(io::load_fixture(fixture));
        if (!relation.empty() && source.empty() && target.empty()) {
            report.add_input(relation);
            return io::parse_relation(io::read_file(relation));
        }
        if (source.empty() || target.empty())
            throw InputError("--source and --target are required unless --fixture is given");
        report.add_input(source);
        report.add_input(target);
        Poset s = io::load_poset(source), t = io::load_poset(target);
        if (!relation.empty()) {
            report.add_input(relation);
            return io::parse_relation(io::read_file(relation), s, t);
        }
        if (!map.empty()) {
            report.add_input(map);
            return io::parse_map(io::read_file(map), s, t).relation();
        }
        throw InputError("one of --relation or --map is required");
    }
};

PosetCover load_poset_cover(const ShapeInput& in, const std::string& cover, RunReport& report)
{
    report.add_input(cover);
    auto parts = io::load_cover(cover);
    if (!in.complex.empty()) {
        report.add_input(in.complex);
        return io::complex_cover(io::load_complex(in.complex), parts).face_cover();
    }
    report.add_input(in.poset);
    return io::poset_cover(io::load_poset(in.poset), parts);
}

// --- commands ---------------------------------------------------------------------

Output cmd_reduce(const Globals& g, const std::string& file, const std::string& method)
{
    Output o{RunReport(method == "core" ? "core" : "reduce " + method), {}, {}};
    o.report.add_input(file);
    Poset p = io::load_poset(file);
    std::ostringstream log;
    if (method == "core" || method == "gamma") {
        CoreResult r = method == "core" ? core(p) : gamma_reduce(p, g.search());
        o.report.attach(method, p, r.certificate, r.core);
        o.report.status = Status::Certified;
        o.report.message = std::to_string(r.certificate.size()) + " removals, " + std::to_string(r.core.size()) +
                           " elements left";
        o.report.result = {{"result", io::to_json(r.core)}, {"certificate", io::to_json(r.certificate)}};
        step_log(log, r.certificate);
        log << "remaining: " << r.core.size() << " elements\n";
        o.dot = io::to_dot(r.core, method);
    } else {
        TrivialityVerdict v = method == "collapse" ? is_collapsible(p, g.search()) : triviality_oracle(p, g.search());
        o.report.status = verdict_status(v.value);
        o.report.message = std::string(to_string(v.value)) + " by " + to_string(v.basis);
        o.report.result = {{"verdict", io::to_json(v)}};
        if (v.value == Verdict::Trivial)
            o.report.attach(method, p, v.certificate);
        if (v.value == Verdict::NonTrivial) {
            std::string err = verify_verdict(p, v);
            if (!err.empty()) {
                o.report.status = Status::Error;
                o.report.message = "non-triviality witness did not check out: " + err;
            }
        }
        step_log(log, v.certificate);
        o.dot = io::to_dot(p, "poset");
    }
    o.text = log.str();
    return o;
}

Output cmd_collapse(const Globals& g, const ShapeInput& in, const std::string& target_file)
{
    in.require("collapse");
    Output o{RunReport("collapse"), {}, {}};
    std::ostringstream log;
    if (!in.complex.empty()) {
        o.report.add_input(in.complex);
        SimplicialComplex k = io::load_complex(in.complex);
        std::optional<SimplicialComplex> target;
        if (!target_file.empty()) {
            o.report.add_input(target_file);
            target = io::load_complex(target_file);
        }
        auto c = target ? simplicial_collapse(k, *target, g.search()) : simplicial_collapse_to_point(k, g.search());
        if (c) {
            o.report.status = Status::Certified;
            o.report.attach("simplicial-collapse", k, *c, target);
            o.report.result = {{"certificate", io::to_json(*c)}};
            step_log(log, *c);
        } else {
            bool obstructed = !target && !homology(k, true).is_zero();
            o.report.status = obstructed ? Status::Refuted : Status::Unknown;
            o.report.message = obstructed ? "non-zero reduced homology" : "no collapse found within the budget";
        }
    } else {
        o.report.add_input(in.poset);
        Poset p = io::load_poset(in.poset);
        std::vector<std::string> target_ids;
        std::optional<Poset> target;
        if (!target_file.empty()) {
            o.report.add_input(target_file);
            target_ids = io::load_poset(target_file).ids();
            Bits keep = p.empty_bits();
            for (const auto& id : target_ids)
                keep.set(p.index_of(id));
            target = induced_subposet(p, keep);
        }
        std::optional<ReductionCertificate> c;
        if (target)
            c = collapse_search(p, target_ids, g.search());
        else if (auto v = is_collapsible(p, g.search()); v.value == Verdict::Trivial)
            c = v.certificate;
        if (c) {
            o.report.status = Status::Certified;
            o.report.attach("poset-collapse", p, *c, target);
            o.report.result = {{"certificate", io::to_json(*c)}};
            step_log(log, *c);
        } else {
            bool obstructed = !target && !homology(p, true).is_zero();
            o.report.status = obstructed ? Status::Refuted : Status::Unknown;
            o.report.message = obstructed ? "non-zero reduced homology" : "no collapse found within the budget";
        }
    }
    o.text = log.str();
    return o;
}

Output cmd_homology(const ShapeInput& in, bool reduced)
{
    in.require("homology");
    Output o{RunReport("homology"), {}, {}};
    HomologyProfile h;
    if (!in.complex.empty()) {
        o.report.add_input(in.complex);
        h = homology(io::load_complex(in.complex), reduced);
    } else {
        o.report.add_input(in.poset);
        h = homology(io::load_poset(in.poset), reduced);
    }
    o.report.status = Status::Certified;
    o.report.message = h.summary();
    o.report.result = {{"homology", io::to_json(h)}};
    o.text = homology_table(h);
    return o;
}

Output cmd_cylinder(const Globals& g, const std::string& action, const RelationInput& in, std::optional<int> degree)
{
    if (action == "build") {
        Output o{RunReport("cylinder build"), {}, {}};
        Relation r = in.load(o.report);
        CylinderPoset c = build_cylinder(r);
        o.report.status = Status::Certified;
        o.report.result = {{"cylinder", io::to_json(c.poset)}, {"relation_pairs", r.size()}};
        o.text = io::to_text(c.poset);
        o.dot = io::to_dot(c.poset, "cylinder");
        return o;
    }
    static const std::map<std::string, std::string> targets = {{"check-source", "source-side"},
                                                                {"check-target", "target-side"},
                                                                {"verify-equivalence", "relation-equivalence"},
                                                                {"verify-homology", "relation-homology"}};
    RunReport inputs("cylinder " + action);
    Relation r = in.load(inputs);
    VerifyOptions opts{g.search(), degree};
    Output o{verify_relation(r, targets.at(action), opts), {}, {}};
    o.report.command = "cylinder " + action;
    std::ostringstream log;
    const io::json summary = o.report.to_json(false);
    for (const auto& c : summary["certificates"])
        log << "  " << c["name"].get<std::string>() << ": " << c["steps"].get<std::size_t>() << " steps\n";
    o.text = log.str();
    return o;
}

Output cmd_nerve(const Globals& g, const ShapeInput& in, const std::string& cover_file)
{
    in.require("nerve");
    Output o{RunReport("nerve"), {}, {}};
    PosetCover cover = load_poset_cover(in, cover_file, o.report);
    SimplicialComplex n = nerve(cover);
    CoverClassification cls = classify_cover(cover, g.search());
    HomologyProfile h = homology(n);
    o.report.status = Status::Certified;
    o.report.message = std::string("cover is ") + to_string(cls.kind);
    o.report.result = {{"nerve", io::to_json(n)}, {"classification", io::to_json(cls)}, {"homology", io::to_json(h)}};
    o.text = io::to_text(n) + homology_table(h);
    o.dot = complex_dot(n, "nerve");
    return o;
}

Output cmd_completion(const ShapeInput& in, const std::string& cover_file)
{
    in.require("completion");
    Output o{RunReport("completion"), {}, {}};
    PosetCover cover = load_poset_cover(in, cover_file, o.report);
    CompletionPoset cp = completion_poset(cover);
    RegularCWComplex cw = completion_cw(cp);
    HomologyProfile h = homology(cw);
    o.report.status = Status::Certified;
    auto fv = cw.f_vector();
    std::ostringstream fvs;
    for (std::size_t i = 0; i < fv.size(); ++i)
        fvs << (i ? "," : "(") << fv[i];
    fvs << ")";
    o.report.message = "f-vector " + fvs.str();
    o.report.result = {{"completion", io::to_json(cw)}, {"homology", io::to_json(h)}};
    std::ostringstream text;
    for (Index c = 0; c < cp.poset.size(); ++c)
        text << "  " << cp.dims[c] << "-cell " << cp.poset.id(c) << "\n";
    text << homology_table(h);
    o.text = text.str();
    o.dot = completion_dot(cp);
    return o;
}

io::json batch(const std::string& root, const VerifyOptions& opts, unsigned threads, bool& all_met)
{
    std::vector<io::Fixture> fixtures;
    for (auto& f : io::list_fixtures(root))
        if (f.theorem)
            fixtures.push_back(std::move(f));
    std::vector<io::json> rows(fixtures.size());
    std::vector<char> met(fixtures.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < fixtures.size();) {
            const io::Fixture& f = fixtures[i];
            std::string status;
            io::json row = {{"fixture", f.name}, {"theorem", *f.theorem}};
            try {
                RunReport r = verify_fixture(f, *f.theorem, opts);
                status = to_string(r.status);
                row["message"] = r.message;
                row["certificates"] = r.certificate_count();
            } catch (const InputError& e) {
                status = "InputError";
                row["message"] = e.what();
            }
            const std::string expect = f.expect.value_or("Certified");
            row["status"] = status;
            row["expect"] = expect;
            row["met"] = status == expect;
            met[i] = status == expect;
            rows[i] = std::move(row);
        }
    };
    std::vector<std::thread> pool;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(fixtures.size())));
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    all_met = std::all_of(met.begin(), met.end(), [](char m) { return m != 0; });
    io::json out = io::json::array();
    for (auto& r : rows)
        out.push_back(std::move(r));
    return out;
}

Output cmd_batch(const Globals& g, const std::string& root, unsigned threads)
{
    Output o{RunReport("verify --batch"), {}, {}};
    bool all_met = false;
    io::json rows = batch(root, VerifyOptions{g.search(), std::nullopt}, threads, all_met);
    o.report.status = all_met ? Status::Certified : Status::Refuted;
    o.report.message = all_met ? "every fixture met its expectation" : "some fixture missed its expectation";
    o.report.result = {{"fixtures", rows}};
    std::ostringstream text;
    for (const auto& r : rows)
        text << "  " << (r["met"].get<bool>() ? "ok  " : "MISS") << " " << r["fixture"].get<std::string>() << " ["
             << r["theorem"].get<std::string>() << "] " << r["status"].get<std::string>() << " (expected "
             << r["expect"].get<std::string>() << ")\n";
    o.text = text.str();
    return o;
}

struct MapperArgs
{
    std::string points;
    std::string sample;
    std::size_t count = 60;
    std::string filter = "x";
    std::size_t intervals = 4;
    double overlap = 0.3;
    double epsilon = 0.25;
    std::string emit = "completion";
};

FilterSpec parse_filter(const std::string& s)
{
    if (s == "x")
        return {FilterKind::Projection, 0};
    if (s == "y")
        return {FilterKind::Projection, 1};
    if (s == "z")
        return {FilterKind::Projection, 2};
    if (s == "eccentricity")
        return {FilterKind::Eccentricity, 0};
    if (s.rfind("axis=", 0) == 0) {
        try {
            return {FilterKind::Projection, static_cast<std::size_t>(std::stoul(s.substr(5)))};
        } catch (const std::exception&) {
        }
    }
    throw InputError("unknown filter '" + s + "' (x, y, z, axis=<n>, eccentricity)");
}

Output cmd_mapper(const Globals& g, const MapperArgs& a)
{
    Output o{RunReport("mapper"), {}, {}};
    std::optional<PointCloud> pc;
    if (!a.sample.empty()) {
        if (!g.seed)
            throw InputError("mapper --sample requires an explicit --seed");
        if (a.sample == "circle")
            pc = circle_sample(*g.seed, a.count);
        else if (a.sample == "figure-eight")
            pc = figure_eight_sample(*g.seed, a.count);
        else
            throw InputError("unknown sample '" + a.sample + "' (circle, figure-eight)");
        o.report.result["sample"] = {{"kind", a.sample}, {"seed", *g.seed}, {"points", a.count}};
    } else {
        if (a.points.empty())
            throw InputError("mapper needs a point file or --sample");
        o.report.add_input(a.points);
        pc = io::load_points(a.points);
    }
    MapperResult r = mapper_completion(*pc, parse_filter(a.filter), IntervalCover{a.intervals, a.overlap}, a.epsilon);
    io::json all = io::to_json(r);
    for (auto it = all.begin(); it != all.end(); ++it)
        o.report.result[it.key()] = it.value();
    o.report.status = Status::Certified;
    o.report.message = "completion " + r.completion_homology.summary() + "; nerve " + r.nerve_homology.summary() +
                       "; component nerve " + r.component_nerve_homology.summary();
    if (r.cover.degenerate)
        std::cerr << "warning: " << r.cover.warning << "\n";

    std::ostringstream text;
    text << "intervals:\n";
    for (std::size_t i = 0; i < r.cover.intervals.size(); ++i)
        text << "  " << r.cover.names[i] << " [" << r.cover.intervals[i].lo << ", " << r.cover.intervals[i].hi << "] "
             << r.cover.parts[i].count() << " points\n";
    if (a.emit == "completion") {
        text << "completion: " << r.completion_homology.summary() << "\n";
        o.dot = completion_dot(r.completion_poset);
    } else if (a.emit == "nerve") {
        text << "nerve:\n" << io::to_text(r.nerve) << r.nerve_homology.summary() << "\n";
        o.dot = complex_dot(r.nerve, "nerve");
    } else if (a.emit == "component-nerve") {
        text << "component nerve:\n" << io::to_text(r.component_nerve) << r.component_nerve_homology.summary() << "\n";
        o.dot = complex_dot(r.component_nerve, "component_nerve");
    } else {
        throw InputError("unknown --emit '" + a.emit + "' (nerve, component-nerve, completion)");
    }
    o.report.result["emit"] = a.emit;
    o.text = text.str();
    return o;
}

Output cmd_fixtures_list(const std::string& root)
{
    Output o{RunReport("fixtures list"), {}, {}};
    io::json rows = io::json::array();
    std::ostringstream text;
    for (const auto& f : io::list_fixtures(root)) {
        io::json files = io::json::array();
        for (const char* stem : {"poset", "complex", "source", "target", "relation", "map", "cover", "points"})
            if (auto p = f.file(stem))
                files.push_back(p->filename().string());
        rows.push_back({{"fixture", f.name},
                        {"theorem", f.theorem.value_or("")},
                        {"expect", f.expect.value_or("")},
                        {"files", files}});
        text << "  " << f.name << "  " << f.theorem.value_or("-") << "  " << f.expect.value_or("-") << "\n";
    }
    o.report.status = Status::Certified;
    o.report.result = {{"fixtures", rows}};
    o.text = text.str();
    return o;
}

Output cmd_fixtures_sample(const Globals& g, const std::string& kind, std::size_t count)
{
    if (!g.seed)
        throw InputError("fixtures sample requires an explicit --seed");
    PointCloud pc = kind == "circle" ? circle_sample(*g.seed, count)
                    : kind == "figure-eight"
                        ? figure_eight_sample(*g.seed, count)
                        : throw InputError("unknown sample '" + kind + "' (circle, figure-eight)");
    std::ostringstream csv;
    csv.precision(17);
    csv << "id,x,y\n";
    for (std::size_t i = 0; i < pc.size(); ++i)
        csv << pc.ids()[i] << "," << pc.point(i)[0] << "," << pc.point(i)[1] << "\n";
    Output o{RunReport("fixtures sample"), {}, {}};
    o.report.status = Status::Certified;
    o.report.result = {{"kind", kind}, {"seed", *g.seed}, {"points", count}, {"csv", csv.str()}};
    o.text = csv.str();
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite spaces, relation cylinders, nerves and their certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--budget", g.budget, "node budget for collapse searches")
        ->envname("FINTOP_BUDGET")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for randomized commands")->envname("FINTOP_SEED");
    app.add_option("--format", g.format, "output format")
        ->envname("FINTOP_FORMAT")
        ->check(CLI::IsMember({"json", "text", "dot"}));
    app.add_option("--out", g.out, "write the report here instead of stdout")->envname("FINTOP_OUT");

    std::function<Output()> run;

    std::string poset_file, method = "oracle";
    auto* reduce = app.add_subcommand("reduce", "decide triviality of a poset and print the reduction steps");
    reduce->add_option("poset", poset_file, "poset file")->required()->check(CLI::ExistingFile);
    reduce->add_option("--method", method, "oracle, core, collapse or gamma")
        ->check(CLI::IsMember({"oracle", "core", "collapse", "gamma"}));
    reduce->callback([&] { run = [&] { return cmd_reduce(g, poset_file, method); }; });

    auto* core_cmd = app.add_subcommand("core", "remove beat points until none is left");
    core_cmd->add_option("poset", poset_file, "poset file")->required()->check(CLI::ExistingFile);
    core_cmd->callback([&] { run = [&] { return cmd_reduce(g, poset_file, "core"); }; });

    ShapeInput shape;
    std::string target_file;
    auto* collapse = app.add_subcommand("collapse", "search for a collapse of a poset or complex");
    shape.add(collapse);
    collapse->add_option("--to", target_file, "target subposet or subcomplex (default: a point)")
        ->check(CLI::ExistingFile);
    collapse->callback([&] { run = [&] { return cmd_collapse(g, shape, target_file); }; });

    RelationInput rel;
    std::optional<int> degree;
    auto* cylinder = app.add_subcommand("cylinder", "cylinder of a relation and its hypotheses");
    cylinder->require_subcommand(1);
    for (const char* action : {"build", "check-source", "check-target", "verify-equivalence", "verify-homology"}) {
        auto* sub = cylinder->add_subcommand(action);
        rel.add(sub);
        if (std::string(action) == "verify-homology")
            sub->add_option("--degree", degree, "compare degrees up to this one");
        std::string name = action;
        sub->callback([&, name] { run = [&, name] { return cmd_cylinder(g, name, rel, degree); }; });
    }

    std::string cover_file;
    auto* nerve_cmd = app.add_subcommand("nerve", "nerve of a cover and its classification");
    shape.add(nerve_cmd);
    nerve_cmd->add_option("--cover", cover_file, "cover file")->required()->check(CLI::ExistingFile);
    nerve_cmd->callback([&] { run = [&] { return cmd_nerve(g, shape, cover_file); }; });

    auto* completion_cmd = app.add_subcommand("completion", "completion of the nerve of a cover");
    shape.add(completion_cmd);
    completion_cmd->add_option("--cover", cover_file, "cover file")->required()->check(CLI::ExistingFile);
    completion_cmd->callback([&] { run = [&] { return cmd_completion(shape, cover_file); }; });

    bool reduced = false;
    auto* homology_cmd = app.add_subcommand("homology", "integral homology of a poset or complex");
    shape.add(homology_cmd);
    homology_cmd->add_flag("--reduced", reduced, "reduced homology");
    homology_cmd->callback([&] { run = [&] { return cmd_homology(shape, reduced); }; });

    std::string verify_target, fixture_dir, batch_dir;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    auto* verify = app.add_subcommand("verify", "run a verification target on a fixture, or every fixture");
    verify->add_option("target", verify_target, "verification target")->check(CLI::IsMember(verify_targets()));
    verify->add_option("fixture", fixture_dir, "fixture directory")->check(CLI::ExistingDirectory);
    verify->add_option("--batch", batch_dir, "run every fixture below this directory")->check(CLI::ExistingDirectory);
    verify->add_option("--threads", threads, "worker threads for --batch")->check(CLI::PositiveNumber);
    verify->add_option("--degree", degree, "degree bound for relation-homology");
    verify->callback([&] {
        run = [&] {
            if (!batch_dir.empty())
                return cmd_batch(g, batch_dir, threads);
            if (verify_target.empty() || fixture_dir.empty())
                throw InputError("verify needs <target> <fixture> or --batch <dir>");
            return Output{verify_fixture(io::load_fixture(fixture_dir), verify_target, {g.search(), degree}), {}, {}};
        };
    });

    MapperArgs margs;
    auto* mapper = app.add_subcommand("mapper", "pullback cover of a point cloud, its nerves and completion");
    mapper->add_option("file", margs.points, "CSV point file")->check(CLI::ExistingFile);
    mapper->add_option("--sample", margs.sample, "generate circle or figure-eight points (needs --seed)");
    mapper->add_option("--count", margs.count, "number of generated points");
    mapper->add_option("--filter", margs.filter, "x, y, z, axis=<n> or eccentricity");
    mapper->add_option("--intervals", margs.intervals, "number of intervals")->check(CLI::PositiveNumber);
    mapper->add_option("--overlap", margs.overlap, "overlap fraction in [0, 1)")->check(CLI::Range(0.0, 0.999999));
    mapper->add_option("--epsilon", margs.epsilon, "connectivity scale")->check(CLI::PositiveNumber);
    mapper->add_option("--emit", margs.emit, "nerve, component-nerve or completion")
        ->check(CLI::IsMember({"nerve", "component-nerve", "completion"}));
    mapper->callback([&] { run = [&] { return cmd_mapper(g, margs); }; });

    std::string fixtures_root = "fixtures", sample_kind = "circle";
    std::size_t sample_count = 60;
    auto* fixtures = app.add_subcommand("fixtures", "list, check or generate fixtures");
    fixtures->require_subcommand(1);
    auto* fx_list = fixtures->add_subcommand("list", "list fixtures and their targets");
    fx_list->add_option("root", fixtures_root, "fixture root")->check(CLI::ExistingDirectory);
    fx_list->callback([&] { run = [&] { return cmd_fixtures_list(fixtures_root); }; });
    auto* fx_check = fixtures->add_subcommand("check", "verify every fixture against its expectation");
    fx_check->add_option("root", fixtures_root, "fixture root")->check(CLI::ExistingDirectory);
    fx_check->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    fx_check->callback([&] { run = [&] { return cmd_batch(g, fixtures_root, threads); }; });
    auto* fx_sample = fixtures->add_subcommand("sample", "write a seeded point sample as CSV (needs --seed)");
    fx_sample->add_option("kind", sample_kind, "circle or figure-eight");
    fx_sample->add_option("--count", sample_count, "number of points");
    fx_sample->callback([&] { run = [&] { return cmd_fixtures_sample(g, sample_kind, sample_count); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputErrorExit;
    }

    try {
        Output o = run();
        if (o.report.command == "fixtures sample" && g.format != "json") {
            emit(g, o.text);
            return 0;
        }
        return finish(g, o);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputErrorExit;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputErrorExit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputErrorExit;
    }
}
