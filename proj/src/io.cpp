#include "fintop/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fintop/errors.hpp"
#include "fintop/generators.hpp"

namespace fintop::io {

namespace {

struct Token
{
    std::string text;
    std::size_t column; // 1-based
};

struct Line
{
    std::size_t number;
    std::string text; // comment stripped
};

std::vector<Line> lines_of(std::string_view text)
{
    std::vector<Line> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string line(text.substr(pos, end - pos));
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        out.push_back({number, std::move(line)});
        if (end == text.size())
            break;
        pos = end + 1;
    }
    return out;
}

// Blank-separated tokens of line[from, to), columns relative to the whole line.
std::vector<Token> tokens(const std::string& line, std::size_t from = 0, std::size_t to = std::string::npos)
{
    to = std::min(to, line.size());
    std::vector<Token> out;
    std::size_t i = from;
    while (i < to) {
        while (i < to && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t start = i;
        while (i < to && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > start)
            out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

bool blank(const std::string& s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

bool looks_like_json(std::string_view text)
{
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        return c == '{';
    }
    return false;
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        if (auto p = what.find("syntax error"); p != std::string::npos)
            what = what.substr(p);
        throw InputError("malformed JSON: " + what, line, column);
    }
}

const json& field(const json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name))
        throw InputError(std::string("JSON: missing field '") + name + "'");
    return j.at(name);
}

std::string as_string(const json& j, const char* what)
{
    if (!j.is_string())
        throw InputError(std::string("JSON: ") + what + " must be a string, got " + j.dump());
    return j.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* what)
{
    if (!j.is_array())
        throw InputError(std::string("JSON: ") + what + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j)
        out.push_back(as_string(e, what));
    return out;
}

std::pair<std::string, std::string> string_pair(const json& j, const char* what)
{
    auto v = string_list(j, what);
    if (v.size() != 2)
        throw InputError(std::string("JSON: each entry of ") + what + " must be a pair, got " + j.dump());
    return {v[0], v[1]};
}

Poset poset_from_json(const json& j)
{
    std::vector<std::string> elements;
    if (j.contains("elements"))
        elements = string_list(j.at("elements"), "elements");
    std::vector<std::pair<std::string, std::string>> relations;
    if (j.contains("relations"))
        for (const auto& r : field(j, "relations"))
            relations.push_back(string_pair(r, "relations"));
    return Poset::from_relations(std::move(elements), relations);
}

// Splits `line` at every occurrence of `sep`; returns segment boundaries.
std::vector<std::pair<std::size_t, std::size_t>> segments(const std::string& line, std::string_view sep)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t p = line.find(sep, start);
        if (p == std::string::npos) {
            out.emplace_back(start, line.size());
            return out;
        }
        out.emplace_back(start, p);
        start = p + sep.size();
    }
}

// "a <sep> b" with exactly one token on each side.
std::pair<Token, Token> binary_line(const Line& l, std::string_view sep)
{
    auto segs = segments(l.text, sep);
    if (segs.size() != 2)
        throw InputError("expected '<left> " + std::string(sep) + " <right>'", l.number, 1);
    auto left = tokens(l.text, segs[0].first, segs[0].second);
    auto right = tokens(l.text, segs[1].first, segs[1].second);
    if (left.size() != 1)
        throw InputError("expected exactly one identifier before '" + std::string(sep) + "'", l.number,
                         left.empty() ? segs[0].first + 1 : left[1].column);
    if (right.size() != 1)
        throw InputError("expected exactly one identifier after '" + std::string(sep) + "'", l.number,
                         right.empty() ? segs[1].first + 1 : right[1].column);
    return {left[0], right[0]};
}

std::optional<double> number(std::string_view s)
{
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        return std::nullopt;
    return v;
}

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

template <typename E>
E enum_from_string(std::string_view s, std::initializer_list<E> values, const char* what)
{
    for (E v : values)
        if (s == to_string(v))
            return v;
    throw InputError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

} // namespace

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Poset parse_poset(std::string_view text)
{
    if (looks_like_json(text))
        return poset_from_json(parse_json(text));
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> relations;
    for (const Line& l : lines_of(text)) {
        if (blank(l.text))
            continue;
        auto segs = segments(l.text, "<");
        if (segs.size() == 1) {
            for (auto& t : tokens(l.text))
                elements.push_back(t.text);
            continue;
        }
        std::vector<std::string> chain;
        for (auto [from, to] : segs) {
            auto ts = tokens(l.text, from, to);
            if (ts.size() != 1)
                throw InputError(ts.empty() ? "missing identifier in chain" : "expected '<' between identifiers",
                                 l.number, ts.empty() ? from + 1 : ts[1].column);
            chain.push_back(ts[0].text);
        }
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            relations.emplace_back(chain[i], chain[i + 1]);
    }
    return Poset::from_relations(std::move(elements), relations);
}

SimplicialComplex parse_complex(std::string_view text)
{
    std::vector<std::vector<std::string>> facets;
    if (looks_like_json(text)) {
        const json doc = parse_json(text);
        for (const auto& f : field(doc, "facets"))
            facets.push_back(string_list(f, "facets"));
        return SimplicialComplex::from_facets(facets);
    }
    for (const Line& l : lines_of(text)) {
        auto ts = tokens(l.text);
        if (ts.empty())
            continue;
        std::set<std::string> seen;
        std::vector<std::string> facet;
        for (auto& t : ts) {
            if (!seen.insert(t.text).second)
                throw InputError("vertex '" + t.text + "' repeated in facet", l.number, t.column);
            facet.push_back(t.text);
        }
        facets.push_back(std::move(facet));
    }
    return SimplicialComplex::from_facets(facets);
}

Relation parse_relation(std::string_view text, const Poset& source, const Poset& target)
{
    std::vector<std::pair<std::string, std::string>> pairs;
    if (looks_like_json(text)) {
        const json doc = parse_json(text);
        for (const auto& p : field(doc, "pairs"))
            pairs.push_back(string_pair(p, "pairs"));
        return Relation(source, target, pairs);
    }
    for (const Line& l : lines_of(text)) {
        if (blank(l.text))
            continue;
        auto [x, y] = binary_line(l, "~");
        if (!source.find(x.text))
            throw InputError("'" + x.text + "' is not an element of the source", l.number, x.column);
        if (!target.find(y.text))
            throw InputError("'" + y.text + "' is not an element of the target", l.number, y.column);
        pairs.emplace_back(x.text, y.text);
    }
    return Relation(source, target, pairs);
}

Relation parse_relation(std::string_view text)
{
    if (!looks_like_json(text))
        throw InputError("a relation without its source and target must be JSON with embedded posets");
    json j = parse_json(text);
    Poset source = poset_from_json(field(j, "source"));
    Poset target = poset_from_json(field(j, "target"));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : field(j, "pairs"))
        pairs.push_back(string_pair(p, "pairs"));
    return Relation(std::move(source), std::move(target), pairs);
}

MonotoneMap parse_map(std::string_view text, const Poset& source, const Poset& target)
{
    std::map<std::string, std::string> values;
    if (looks_like_json(text)) {
        const json doc = parse_json(text);
        const json& m = field(doc, "map");
        if (!m.is_object())
            throw InputError("JSON: 'map' must be an object");
        for (auto it = m.begin(); it != m.end(); ++it)
            values[it.key()] = as_string(it.value(), "map values");
        return MonotoneMap::from_ids(source, target, values);
    }
    for (const Line& l : lines_of(text)) {
        if (blank(l.text))
            continue;
        auto [x, y] = binary_line(l, "->");
        if (!source.find(x.text))
            throw InputError("'" + x.text + "' is not an element of the source", l.number, x.column);
        if (!target.find(y.text))
            throw InputError("'" + y.text + "' is not an element of the target", l.number, y.column);
        if (!values.emplace(x.text, y.text).second)
            throw InputError("'" + x.text + "' is mapped twice", l.number, x.column);
    }
    return MonotoneMap::from_ids(source, target, values);
}

CoverParts parse_cover(std::string_view text)
{
    CoverParts out;
    if (looks_like_json(text)) {
        const json doc = parse_json(text);
        const json& parts = field(doc, "parts");
        if (!parts.is_object())
            throw InputError("JSON: 'parts' must be an object");
        for (auto it = parts.begin(); it != parts.end(); ++it) {
            if (!it.value().is_array())
                throw InputError("JSON: part '" + it.key() + "' must be an array");
            std::vector<std::vector<std::string>> members;
            for (const auto& m : it.value())
                members.push_back(m.is_string() ? std::vector<std::string>{m.get<std::string>()}
                                                : string_list(m, "cover members"));
            out.emplace_back(it.key(), std::move(members));
        }
        return out;
    }
    for (const Line& l : lines_of(text)) {
        auto ts = tokens(l.text);
        if (ts.empty())
            continue;
        if (ts[0].text == "part") {
            if (ts.size() != 2)
                throw InputError("expected 'part <name>'", l.number, ts.size() < 2 ? ts[0].column : ts[2].column);
            out.emplace_back(ts[1].text, std::vector<std::vector<std::string>>{});
            continue;
        }
        if (out.empty())
            throw InputError("member line before the first 'part' header", l.number, ts[0].column);
        std::vector<std::string> members;
        for (auto& t : ts)
            members.push_back(t.text);
        out.back().second.push_back(std::move(members));
    }
    return out;
}

PosetCover poset_cover(const Poset& base, const CoverParts& parts, bool take_open_hull)
{
    std::vector<std::pair<std::string, std::vector<std::string>>> flat;
    for (const auto& [name, lines] : parts) {
        std::vector<std::string> members;
        for (const auto& l : lines)
            members.insert(members.end(), l.begin(), l.end());
        flat.emplace_back(name, std::move(members));
    }
    return PosetCover::from_ids(base, flat, take_open_hull);
}

ComplexCover complex_cover(const SimplicialComplex& base, const CoverParts& parts) { return ComplexCover(base, parts); }

PointCloud parse_points(std::string_view csv)
{
    struct Row
    {
        std::size_t line;
        std::vector<Token> fields;
    };
    std::vector<Row> rows;
    for (const Line& l : lines_of(csv)) {
        if (blank(l.text))
            continue;
        Row r{l.number, {}};
        for (auto [from, to] : segments(l.text, ",")) {
            std::string f = trim(std::string_view(l.text).substr(from, to - from));
            r.fields.push_back({f, from + 1});
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty())
        throw InputError("point file has no rows");

    // A non-numeric coordinate field marks a header. A non-numeric first
    // field alone only does when the next row starts with a number.
    const auto& first_row = rows[0].fields;
    bool header = std::any_of(first_row.begin() + 1, first_row.end(), [](const Token& t) { return !number(t.text); });
    if (!header && !number(first_row[0].text))
        header = rows.size() == 1 || number(rows[1].fields[0].text).has_value();
    bool id_column = false;
    if (header) {
        std::string first = rows[0].fields[0].text;
        std::transform(first.begin(), first.end(), first.begin(), [](unsigned char c) { return std::tolower(c); });
        id_column = first == "id" || first == "name" || first == "label";
    }
    const std::size_t begin = header ? 1 : 0;
    if (rows.size() == begin)
        throw InputError("point file has a header but no points");
    if (!id_column && !number(rows[begin].fields[0].text))
        id_column = true;

    std::vector<std::string> ids;
    std::vector<std::vector<double>> points;
    const std::size_t width = rows[begin].fields.size();
    for (std::size_t i = begin; i < rows.size(); ++i) {
        const Row& r = rows[i];
        if (r.fields.size() != width)
            throw InputError("expected " + std::to_string(width) + " fields, found " + std::to_string(r.fields.size()),
                             r.line, 1);
        std::vector<double> p;
        for (std::size_t k = id_column ? 1 : 0; k < r.fields.size(); ++k) {
            auto v = number(r.fields[k].text);
            if (!v)
                throw InputError("'" + r.fields[k].text + "' is not a number", r.line, r.fields[k].column);
            p.push_back(*v);
        }
        if (p.empty())
            throw InputError("row has no coordinates", r.line, 1);
        ids.push_back(id_column ? r.fields[0].text : "");
        points.push_back(std::move(p));
    }
    if (!id_column) {
        auto generated = numbered_ids("p", points.size());
        ids = std::move(generated);
    }
    return PointCloud(std::move(ids), std::move(points));
}

Poset load_poset(const std::filesystem::path& path) { return parse_poset(read_file(path)); }
SimplicialComplex load_complex(const std::filesystem::path& path) { return parse_complex(read_file(path)); }
CoverParts load_cover(const std::filesystem::path& path) { return parse_cover(read_file(path)); }
PointCloud load_points(const std::filesystem::path& path) { return parse_points(read_file(path)); }

// --- output -------------------------------------------------------------------

std::string to_text(const Poset& p)
{
    std::ostringstream os;
    for (const auto& id : p.ids())
        os << id << "\n";
    for (auto [a, b] : p.hasse_edges())
        os << p.id(a) << " < " << p.id(b) << "\n";
    return os.str();
}

std::string to_text(const SimplicialComplex& k)
{
    std::ostringstream os;
    for (const auto& f : k.facets()) {
        auto labels = k.labels(f);
        for (std::size_t i = 0; i < labels.size(); ++i)
            os << (i ? " " : "") << labels[i];
        os << "\n";
    }
    return os.str();
}

std::string to_dot(const Poset& p, const std::string& name)
{
    auto q = [](const std::string& id) {
        std::string out = "\"";
        for (char c : id) {
            if (c == '"' || c == '\\')
                out += '\\';
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << "digraph " << q(name) << " {\n  rankdir=BT;\n";
    for (const auto& id : p.ids())
        os << "  " << q(id) << ";\n";
    for (auto [a, b] : p.hasse_edges())
        os << "  " << q(p.id(a)) << " -> " << q(p.id(b)) << ";\n";
    os << "}\n";
    return os.str();
}

json to_json(const Poset& p)
{
    json rel = json::array();
    for (auto [a, b] : p.hasse_edges())
        rel.push_back({p.id(a), p.id(b)});
    return {{"elements", p.ids()}, {"relations", std::move(rel)}};
}

json to_json(const ElementSet& s)
{
    json out = json::array();
    for (Index i : s.indices())
        out.push_back(s.parent().id(i));
    return out;
}

json to_json(const SimplicialComplex& k)
{
    json facets = json::array();
    for (const auto& f : k.facets())
        facets.push_back(k.labels(f));
    return {{"facets", std::move(facets)}, {"f_vector", k.f_vector()}};
}

json to_json(const RegularCWComplex& c)
{
    json dims = json::object();
    for (Index i = 0; i < c.face_poset().size(); ++i)
        dims[c.face_poset().id(i)] = c.dim(i);
    return {{"face_poset", to_json(c.face_poset())}, {"dim", std::move(dims)}, {"f_vector", c.f_vector()}};
}

json to_json(const HomologyProfile& h)
{
    json groups = json::array();
    for (std::size_t k = 0; k < h.groups.size(); ++k) {
        json torsion = json::array();
        for (const auto& t : h.groups[k].torsion)
            torsion.push_back(t.str());
        groups.push_back({{"degree", k}, {"betti", h.groups[k].betti}, {"torsion", std::move(torsion)}});
    }
    json out = {{"reduced", h.reduced}, {"groups", std::move(groups)}, {"summary", h.summary()}};
    if (h.empty_space)
        out["empty_space"] = true;
    return out;
}

json to_json(const HomologyComparison& c) { return {{"equal", c.equal}, {"differences", c.differences}}; }

json to_json(const ReductionStep& s)
{
    json out = {{"kind", to_string(s.kind)}};
    if (s.kind == StepKind::SimplicialCollapse) {
        out["face"] = s.face;
        out["coface"] = s.coface;
        return out;
    }
    out["element"] = s.element;
    if (!s.witness.empty())
        out["witness"] = s.witness;
    if (s.evidence)
        out["evidence"] = to_json(*s.evidence);
    return out;
}

json to_json(const ReductionCertificate& c)
{
    json steps = json::array();
    for (const auto& s : c.steps)
        steps.push_back(to_json(s));
    return steps;
}

json to_json(const TrivialityVerdict& v)
{
    json out = {{"verdict", to_string(v.value)}, {"basis", to_string(v.basis)}};
    if (!v.certificate.empty())
        out["certificate"] = to_json(v.certificate);
    if (v.basis == Basis::Disconnected || v.basis == Basis::CoreNotPoint)
        out["count"] = v.count;
    if (v.homology)
        out["homology"] = to_json(*v.homology);
    if (v.nodes)
        out["nodes"] = v.nodes;
    return out;
}

json to_json(const HypothesisReport& r)
{
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"element", e.element}, {"set", to_json(e.set)}, {"verdict", to_json(e.verdict)}});
    json out = {{"status", to_string(r.status)}, {"entries", std::move(entries)}};
    if (const auto* f = r.first_failure())
        out["first_failure"] = f->element;
    return out;
}

json to_json(const EquivalenceReport& r)
{
    json out = {{"status", to_string(r.status)},
                {"message", r.message},
                {"source_side", to_json(r.source_side)},
                {"target_side", to_json(r.target_side)}};
    if (r.to_source)
        out["collapse_to_source"] = to_json(*r.to_source);
    if (r.to_target)
        out["collapse_to_target"] = to_json(*r.to_target);
    out["source_homology"] = to_json(r.source_homology);
    out["target_homology"] = to_json(r.target_homology);
    out["comparison"] = to_json(r.comparison);
    return out;
}

json to_json(const RelationHomologyReport& r)
{
    auto side = [](const std::vector<std::pair<std::string, HomologyProfile>>& v) {
        json out = json::array();
        for (const auto& [e, h] : v)
            out.push_back({{"element", e}, {"reduced_homology", to_json(h)}});
        return out;
    };
    return {{"status", to_string(r.status)},
            {"message", r.message},
            {"degree", r.degree},
            {"source_side", side(r.source_side)},
            {"target_side", side(r.target_side)},
            {"source_homology", to_json(r.source_homology)},
            {"target_homology", to_json(r.target_homology)},
            {"comparison", to_json(r.comparison)}};
}

json to_json(const CoverClassification& c)
{
    json items = json::array();
    for (const auto& iv : c.intersections) {
        json comps = json::array();
        for (const auto& [bits, verdict] : iv.components)
            comps.push_back(to_json(verdict));
        items.push_back({{"parts", iv.label}, {"verdict", to_json(iv.verdict)}, {"components", std::move(comps)}});
    }
    return {{"kind", to_string(c.kind)}, {"intersections", std::move(items)}};
}

json to_json(const NerveReport& r)
{
    json out = {{"variant", to_string(r.variant)},
                {"status", to_string(r.status)},
                {"message", r.message},
                {"classification", to_json(r.classification)},
                {"nerve_object", to_json(r.nerve_object)}};
    if (r.equivalence)
        out["equivalence"] = to_json(*r.equivalence);
    out["base_homology"] = to_json(r.base_homology);
    out["nerve_homology"] = to_json(r.nerve_homology);
    out["comparison"] = to_json(r.comparison);
    return out;
}

json to_json(const CompletionPoset& c)
{
    json dims = json::object();
    for (Index i = 0; i < c.poset.size(); ++i)
        dims[c.poset.id(i)] = c.dims[i];
    return {{"face_poset", to_json(c.poset)}, {"dim", std::move(dims)}};
}

json to_json(const CompletionReport& r)
{
    json out = {{"status", to_string(r.status)}, {"message", r.message}, {"poset_level", to_json(r.poset_level)}};
    if (r.completion)
        out["completion"] = to_json(*r.completion);
    out["base_homology"] = to_json(r.base_homology);
    out["completion_homology"] = to_json(r.completion_homology);
    out["comparison"] = to_json(r.comparison);
    return out;
}

json to_json(const MapperResult& r)
{
    json intervals = json::array();
    for (std::size_t i = 0; i < r.cover.intervals.size(); ++i)
        intervals.push_back({{"name", r.cover.names[i]},
                             {"lo", r.cover.intervals[i].lo},
                             {"hi", r.cover.intervals[i].hi},
                             {"size", r.cover.parts[i].count()}});
    json out = {{"epsilon", r.epsilon}, {"intervals", std::move(intervals)}};
    if (r.cover.degenerate)
        out["warning"] = r.cover.warning;
    if (r.completion)
        out["completion"] = to_json(*r.completion);
    out["completion_homology"] = to_json(r.completion_homology);
    out["nerve"] = to_json(r.nerve);
    out["nerve_homology"] = to_json(r.nerve_homology);
    out["component_nerve"] = to_json(r.component_nerve);
    out["component_nerve_homology"] = to_json(r.component_nerve_homology);
    return out;
}

namespace {

TrivialityVerdict verdict_from_json(const json& j);

ReductionStep step_from_json(const json& j)
{
    ReductionStep s;
    std::string kind = as_string(field(j, "kind"), "step kind");
    auto k = step_kind_from_string(kind);
    if (!k)
        throw InputError("unknown step kind '" + kind + "'");
    s.kind = *k;
    if (s.kind == StepKind::SimplicialCollapse) {
        s.face = string_list(field(j, "face"), "face");
        s.coface = string_list(field(j, "coface"), "coface");
        return s;
    }
    s.element = as_string(field(j, "element"), "element");
    if (j.contains("witness"))
        s.witness = as_string(j.at("witness"), "witness");
    if (j.contains("evidence"))
        s.evidence = std::make_shared<const TrivialityVerdict>(verdict_from_json(j.at("evidence")));
    return s;
}

TrivialityVerdict verdict_from_json(const json& j)
{
    TrivialityVerdict v;
    v.value = enum_from_string(as_string(field(j, "verdict"), "verdict"),
                               {Verdict::Trivial, Verdict::NonTrivial, Verdict::Unknown}, "verdict");
    v.basis = enum_from_string(as_string(field(j, "basis"), "basis"),
                               {Basis::Empty, Basis::Disconnected, Basis::NonzeroHomology, Basis::Dismantling,
                                Basis::Collapse, Basis::CoreNotPoint, Basis::NotCollapsible, Basis::BudgetExhausted},
                               "basis");
    if (j.contains("certificate"))
        v.certificate = certificate_from_json(j.at("certificate"));
    if (j.contains("count"))
        v.count = j.at("count").get<std::size_t>();
    if (j.contains("nodes"))
        v.nodes = j.at("nodes").get<std::size_t>();
    return v;
}

} // namespace

ReductionCertificate certificate_from_json(const json& j)
{
    if (!j.is_array())
        throw InputError("JSON: a certificate must be an array of steps");
    ReductionCertificate c;
    for (const auto& s : j)
        c.steps.push_back(step_from_json(s));
    return c;
}

// --- fixtures -------------------------------------------------------------------

std::optional<std::filesystem::path> Fixture::file(std::string_view stem) const
{
    for (const char* ext : {".txt", ".json", ".csv"}) {
        auto p = directory / (std::string(stem) + ext);
        if (std::filesystem::exists(p))
            return p;
    }
    return std::nullopt;
}

std::filesystem::path Fixture::require(std::string_view stem) const
{
    if (auto p = file(stem))
        return *p;
    throw InputError("fixture '" + name + "' has no " + std::string(stem) + " file");
}

Fixture load_fixture(const std::filesystem::path& directory)
{
    if (!std::filesystem::is_directory(directory))
        throw InputError("fixture directory " + directory.string() + " does not exist");
    Fixture f;
    f.directory = directory;
    f.name = directory.filename().string();
    if (f.name.empty())
        f.name = directory.parent_path().filename().string();
    auto manifest = directory / "fixture.json";
    if (std::filesystem::exists(manifest)) {
        json j = parse_json(read_file(manifest));
        if (j.contains("theorem"))
            f.theorem = as_string(j.at("theorem"), "theorem");
        if (j.contains("expect"))
            f.expect = as_string(j.at("expect"), "expect");
        if (j.contains("params"))
            f.params = j.at("params");
    }
    return f;
}

std::vector<Fixture> list_fixtures(const std::filesystem::path& root)
{
    if (!std::filesystem::is_directory(root))
        throw InputError("fixture root " + root.string() + " does not exist");
    std::vector<std::filesystem::path> dirs;
    for (const auto& e : std::filesystem::directory_iterator(root))
        if (e.is_directory())
            dirs.push_back(e.path());
    std::sort(dirs.begin(), dirs.end());
    std::vector<Fixture> out;
    for (const auto& d : dirs)
        out.push_back(load_fixture(d));
    return out;
}

} // namespace fintop::io
