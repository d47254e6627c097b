#include "lamination/io.hpp"

#include <fstream>
#include <sstream>

#include "lamination/error.hpp"

namespace lam {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

std::vector<Angle> parse_set(const std::string& s, int line) {
    auto t = trim(s);
    if (t.size() < 2 || t.front() != '{' || t.back() != '}')
        throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": expected {a,b,...}");
    std::vector<Angle> out;
    std::stringstream ss(t.substr(1, t.size() - 2));
    for (std::string tok; std::getline(ss, tok, ',');) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(Angle::parse(tok));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string set_str(const std::vector<Angle>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i].str();
    return out + "}";
}

int parse_int(const std::string& s, int line) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": bad integer '" + s + "'");
    }
}

GeneratorKind parse_kind(const std::string& s, int line) {
    if (s == "critical-portrait") return GeneratorKind::critical_portrait;
    if (s == "equivalence-relation") return GeneratorKind::equivalence_relation;
    if (s == "explicit-list") return GeneratorKind::explicit_list;
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": unknown generator '" + s + "'");
}

}  // namespace

std::string serialize(const Geolamination& L) {
    std::ostringstream os;
    os << "degree " << L.degree() << " depth " << L.depth() << "\n";
    const auto& g = L.generator;
    os << "#! generator " << generator_kind_name(g.kind) << "\n";
    if (g.portrait)
        for (const auto& s : g.portrait->sets) os << "#! portrait " << set_str(s) << "\n";
    if (g.classes)
        for (const auto& s : *g.classes) os << "#! class " << set_str(s) << "\n";
    if (!g.policy.empty()) os << "#! policy " << g.policy << "\n";
    if (g.siegel_construction) os << "#! siegel\n";
    if (!L.label.empty()) os << "#! label " << L.label << "\n";
    for (const auto& [c, gen] : L.leaves()) os << c.str() << "\n";
    return os.str();
}

Geolamination parse_lam(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    std::optional<Geolamination> L;
    GeneratorMeta meta;
    std::string label;
    std::vector<Chord> chords;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.rfind("#!", 0) == 0) {
            auto rest = trim(s.substr(2));
            auto sp = rest.find(' ');
            std::string key = rest.substr(0, sp);
            std::string val = sp == std::string::npos ? "" : trim(rest.substr(sp + 1));
            if (key == "generator") meta.kind = parse_kind(val, line);
            else if (key == "portrait") {
                if (!meta.portrait) meta.portrait = CriticalPortrait{};
                meta.portrait->sets.push_back(parse_set(val, line));
            } else if (key == "class") {
                if (!meta.classes) meta.classes = std::vector<std::vector<Angle>>{};
                meta.classes->push_back(parse_set(val, line));
            } else if (key == "policy") meta.policy = val;
            else if (key == "siegel") meta.siegel_construction = true;
            else if (key == "label") label = val;
            continue;
        }
        if (s[0] == '#') continue;
        auto tok = split_ws(s);
        if (!L) {
            if (tok.size() == 4 && tok[0] == "degree" && tok[2] == "depth") {
                L.emplace(parse_int(tok[1], line), parse_int(tok[3], line));
            } else if (tok.size() == 3 && tok[0] == "qml" && tok[1] == "max_period") {
                parse_int(tok[2], line);
                L.emplace(2, 0);
            } else {
                throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": expected 'degree d depth N'");
            }
            continue;
        }
        if (tok.size() != 2)
            throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": expected two angles");
        chords.emplace_back(Angle::parse(tok[0]), Angle::parse(tok[1]));
    }
    if (!L) throw Error(ErrorCode::parse_error, "missing header");
    for (const auto& c : chords) L->insert(c);
    L->generator = meta;
    L->label = label;
    return *L;
}

std::string serialize_qml(const QmlApprox& q) {
    std::ostringstream os;
    os << "qml max_period " << q.max_period << "\n";
    for (const auto& c : q.leaves) os << c.str() << "\n";
    for (const auto& a : q.degenerate) os << a.str() << " " << a.str() << "\n";
    return os.str();
}

QmlApprox parse_qml(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    bool header = false;
    QmlApprox q;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        auto tok = split_ws(s);
        if (!header) {
            if (tok.size() != 3 || tok[0] != "qml" || tok[1] != "max_period")
                throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": expected 'qml max_period K'");
            q.max_period = parse_int(tok[2], line);
            header = true;
            continue;
        }
        if (tok.size() != 2)
            throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": expected two angles");
        Chord c(Angle::parse(tok[0]), Angle::parse(tok[1]));
        if (c.degenerate()) q.degenerate.push_back(c.p());
        else q.leaves.push_back(c);
    }
    if (!header) throw Error(ErrorCode::parse_error, "missing header");
    std::sort(q.leaves.begin(), q.leaves.end());
    std::sort(q.degenerate.begin(), q.degenerate.end());
    return q;
}

std::string serialize_classes(const std::vector<std::vector<Angle>>& classes) {
    std::string out;
    for (const auto& c : classes) out += set_str(c) + "\n";
    return out;
}

std::vector<std::vector<Angle>> parse_classes(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    std::vector<std::vector<Angle>> out;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        out.push_back(parse_set(s, line));
    }
    return out;
}

ChoicePolicy parse_script(const std::string& text) {
    ChoicePolicy p;
    p.kind = ChoicePolicy::Kind::scripted;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        auto tok = split_ws(s);
        if (tok[0] == "side") {
            if (tok.size() != 4)
                throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": expected 'side v start end'");
            p.side_rules.push_back({Angle::parse(tok[1]), Arc{Angle::parse(tok[2]), Angle::parse(tok[3]), Closure::open}});
            continue;
        }
        auto colon = s.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": expected 'leaf : chord, chord'");
        Chord leaf = Chord::parse(s.substr(0, colon));
        std::vector<Chord> picks;
        std::stringstream ss(s.substr(colon + 1));
        for (std::string part; std::getline(ss, part, ',');)
            if (!trim(part).empty()) picks.push_back(Chord::parse(part));
        p.schedule[leaf] = picks;
    }
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse_error, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::invalid_input, "cannot write " + path);
    out << text;
}

}  // namespace lam
