#include "artifact/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

namespace artifact {

std::string TriDegree::str() const {
    std::ostringstream os;
    os << "(" << s << "," << f << "," << w << ")";
    return os.str();
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = b[i] - a[i];
    return c;
}

bool mono_is_one(const Monomial& m) {
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

void add_term(Element& e, const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto it = e.find(m);
    if (it == e.end()) {
        e.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) e.erase(it);
}

Element scale(const Element& e, const Int& c) {
    Element out;
    if (c == 0) return out;
    for (const auto& [m, x] : e) out.emplace(m, x * c);
    return out;
}

Element add(const Element& a, const Element& b) {
    Element out = a;
    for (const auto& [m, c] : b) add_term(out, m, c);
    return out;
}

namespace {

const char* kSuper[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};

std::string superscript(long n) {
    std::string digits = std::to_string(n), out;
    for (char ch : digits) out += kSuper[ch - '0'];
    return out;
}

// a display symbol of more than one glyph needs parentheses under a power
bool compound_symbol(const std::string& s) {
    std::size_t glyphs = 0;
    for (unsigned char ch : s)
        if ((ch & 0xC0) != 0x80) ++glyphs;
    // subscript digits ride on the previous glyph
    std::size_t subs = 0;
    for (std::size_t i = 0; i + 2 < s.size(); ++i)
        if ((unsigned char)s[i] == 0xE2 && (unsigned char)s[i + 1] == 0x82) ++subs;
    return glyphs - subs > 1;
}

TriDegree parse_degree(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw PresentationError("degree must be [s,f,w]");
    return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

}  // namespace

RingPresentation RingPresentation::from_json(const nlohmann::json& j) {
    RingPresentation p;
    p.raw_ = j;
    p.name_ = j.at("name").get<std::string>();
    if (j.contains("grading")) {
        auto g = j["grading"].get<std::string>();
        if (g == "eta") p.grading_ = Grading::Eta;
        else if (g != "tri") throw PresentationError("unknown grading " + g);
    }
    if (j.contains("globalTorsion")) p.global_torsion_ = Int(j["globalTorsion"].get<long long>());
    for (const auto& g : j.at("generators")) {
        GeneratorSpec spec;
        spec.name = g.at("name").get<std::string>();
        spec.degree = parse_degree(g.at("degree"));
        spec.torsion = Int(g.value("torsion", 0LL));
        if (g.contains("cap") && !g["cap"].is_null()) spec.cap = g["cap"].get<int>();
        spec.display = g.value("display", spec.name);
        spec.step = g.value("step", 1);
        if (spec.torsion != 0 && (spec.torsion & (spec.torsion - 1)) != 0)
            throw PresentationError("torsion of " + spec.name + " is not a power of 2");
        if (p.index_.count(spec.name)) throw PresentationError("duplicate generator " + spec.name);
        p.index_[spec.name] = p.gens_.size();
        p.gens_.push_back(spec);
    }
    for (const auto& g : p.gens_) p.grade_.push_back(p.grade_of_tri(g.degree));
    if (j.contains("rules"))
        for (const auto& r : j["rules"]) {
            RewriteRule rule;
            rule.lhs = p.one();
            for (auto it = r.at("lhs").begin(); it != r.at("lhs").end(); ++it)
                rule.lhs[p.index(it.key())] = it.value().get<int>();
            for (const auto& [c, m] : p.parse_poly_json(r.at("rhs"))) add_term(rule.rhs, m, c);
            p.rules_.push_back(std::move(rule));
        }
    p.check_rules();
    p.find_functional();
    return p;
}

RingPresentation RingPresentation::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PresentationError("cannot open presentation " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

std::size_t RingPresentation::index(const std::string& gen) const {
    auto it = index_.find(gen);
    if (it == index_.end()) throw PresentationError("unknown generator '" + gen + "' in " + name_);
    return it->second;
}

Monomial RingPresentation::gen(const std::string& name, int exp) const {
    Monomial m = one();
    m[index(name)] = exp;
    return m;
}

TriDegree RingPresentation::degree_of(const Monomial& m) const {
    if (m.size() != gens_.size()) throw PresentationError("monomial does not belong to " + name_);
    TriDegree d;
    for (std::size_t i = 0; i < m.size(); ++i) d = d + gens_[i].degree * m[i];
    return d;
}

TriDegree RingPresentation::grade_of_tri(const TriDegree& d) const {
    if (grading_ == Grading::Tri) return d;
    return {d.s - d.w, d.f - d.s, 0};
}

TriDegree RingPresentation::grade_of(const Monomial& m) const { return grade_of_tri(degree_of(m)); }

Int RingPresentation::order_of(const Monomial& m) const {
    Int o = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0 && gens_[i].torsion != 0 && (o == 0 || gens_[i].torsion < o)) o = gens_[i].torsion;
    if (global_torsion_ && (o == 0 || *global_torsion_ < o)) o = *global_torsion_;
    return o;
}

bool RingPresentation::is_normal(const Monomial& m) const {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (gens_[i].cap && m[i] > *gens_[i].cap) return false;
    for (const auto& r : rules_)
        if (mono_divides(r.lhs, m)) return false;
    return true;
}

void RingPresentation::check_rules() const {
    for (const auto& r : rules_) {
        TriDegree d = degree_of(r.lhs);
        auto capped_sum = [&](const Monomial& m) {
            int s = 0;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (gens_[i].cap) s += m[i];
            return s;
        };
        int lhs_sum = capped_sum(r.lhs);
        if (lhs_sum == 0) throw PresentationError("rule lhs must involve a capped generator");
        for (const auto& [m, c] : r.rhs) {
            if (degree_of(m) != d) throw PresentationError("inhomogeneous rule in " + name_);
            if (capped_sum(m) >= lhs_sum) throw PresentationError("rule does not reduce capped exponents");
        }
    }
}

namespace {

int coord(const TriDegree& d, int i) { return i == 0 ? d.s : (i == 1 ? d.f : d.w); }

long det3(const std::vector<std::vector<long>>& m) {
    if (m.size() == 1) return m[0][0];
    if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

void RingPresentation::find_functional() {
    functional_.clear();
    for (int a = -4; a <= 4 && functional_.empty(); ++a)
        for (int b = -4; b <= 4 && functional_.empty(); ++b)
            for (int c = -4; c <= 4 && functional_.empty(); ++c) {
                bool ok = true;
                for (std::size_t i = 0; i < gens_.size() && ok; ++i) {
                    if (gens_[i].cap) continue;
                    const auto& g = grade_[i];
                    if (a * g.s + b * g.f + c * g.w <= 0) ok = false;
                }
                if (ok) functional_ = {a, b, c};
            }
    if (functional_.empty()) throw PresentationError("presentation " + name_ + " has non-terminating basis enumeration");

    // solve for as many uncapped generators as the grading allows; loop over the rest
    solved_.clear();
    solve_coords_.clear();
    std::vector<std::size_t> uncapped;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (!gens_[i].cap) uncapped.push_back(i);
    for (auto it = uncapped.rbegin(); it != uncapped.rend() && solved_.size() < 3; ++it) {
        auto trial = solved_;
        trial.push_back(*it);
        bool found = false;
        std::vector<int> cs;
        // look for coordinates giving an invertible minor
        for (int mask = 0; mask < 8 && !found; ++mask) {
            if (__builtin_popcount(mask) != static_cast<int>(trial.size())) continue;
            cs.clear();
            for (int i = 0; i < 3; ++i)
                if (mask & (1 << i)) cs.push_back(i);
            std::vector<std::vector<long>> m(trial.size(), std::vector<long>(trial.size()));
            for (std::size_t r = 0; r < cs.size(); ++r)
                for (std::size_t c = 0; c < trial.size(); ++c) m[r][c] = coord(grade_[trial[c]], cs[r]);
            if (det3(m) != 0) found = true;
        }
        if (found) {
            solved_ = trial;
            solve_coords_ = cs;
        }
    }
    order_.clear();
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].cap) order_.push_back(i);
    for (std::size_t i : uncapped)
        if (std::find(solved_.begin(), solved_.end(), i) == solved_.end()) order_.push_back(i);
}

void RingPresentation::enumerate(std::size_t k, const TriDegree& rem, Monomial& cur, std::vector<Monomial>& out,
                                 const TriDegree& target) const {
    if (k == order_.size()) {
        const std::size_t n = solved_.size();
        std::vector<std::vector<long>> m(n, std::vector<long>(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m[r][c] = coord(grade_[solved_[c]], solve_coords_[r]);
        long det = det3(m);
        TriDegree left = rem;
        for (std::size_t c = 0; c < n; ++c) {
            auto mc = m;
            for (std::size_t r = 0; r < n; ++r) mc[r][c] = coord(rem, solve_coords_[r]);
            long num = det3(mc);
            if (num % det != 0) return;
            long x = num / det;
            if (x < 0) return;
            cur[solved_[c]] = static_cast<int>(x);
            left = left - grade_[solved_[c]] * static_cast<int>(x);
        }
        if (left == TriDegree{}) out.push_back(cur);
        for (std::size_t c = 0; c < n; ++c) cur[solved_[c]] = 0;
        return;
    }
    std::size_t gi = order_[k];
    const auto& g = grade_[gi];
    int bound;
    if (gens_[gi].cap) {
        bound = *gens_[gi].cap;
    } else {
        int lr = functional_[0] * rem.s + functional_[1] * rem.f + functional_[2] * rem.w;
        int lg = functional_[0] * g.s + functional_[1] * g.f + functional_[2] * g.w;
        if (lr < 0) return;
        bound = lr / lg;
    }
    for (int e = 0; e <= bound; ++e) {
        cur[gi] = e;
        enumerate(k + 1, rem - g * e, cur, out, target);
    }
    cur[gi] = 0;
}

GradedPiece RingPresentation::basis_at(const TriDegree& d) const {
    // with capped generators placed first, the functional must be nonnegative
    // on what remains once they are chosen; enumerate handles the pruning
    std::vector<Monomial> raw;
    Monomial cur = one();
    enumerate(0, d, cur, raw, d);
    GradedPiece piece;
    std::sort(raw.begin(), raw.end());
    for (const auto& m : raw) {
        if (!is_normal(m)) continue;
        Int o = order_of(m);
        piece.basis.emplace_back(m, o);
    }
    return piece;
}

Element RingPresentation::normal_form(const Element& e) const {
    Element acc;
    std::vector<std::pair<Monomial, Int>> work(e.begin(), e.end());
    while (!work.empty()) {
        auto [m, c] = std::move(work.back());
        work.pop_back();
        if (c == 0) continue;
        const RewriteRule* hit = nullptr;
        for (const auto& r : rules_)
            if (mono_divides(r.lhs, m)) {
                hit = &r;
                break;
            }
        if (hit) {
            Monomial rest = mono_div(m, hit->lhs);
            for (const auto& [rm, rc] : hit->rhs) work.emplace_back(mono_mul(rest, rm), rc * c);
            continue;
        }
        bool over = false;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (gens_[i].cap && m[i] > *gens_[i].cap) over = true;
        if (over) continue;
        add_term(acc, m, c);
    }
    Element out;
    for (const auto& [m, c] : acc) {
        Int r = reduce_mod(c, order_of(m));
        if (r != 0) out.emplace(m, r);
    }
    return out;
}

Element RingPresentation::multiply(const Element& a, const Element& b) const {
    Element prod;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) add_term(prod, mono_mul(ma, mb), ca * cb);
    return normal_form(prod);
}

Element RingPresentation::monomial_element(const Monomial& m, const Int& c) const {
    Element e;
    add_term(e, m, c);
    return normal_form(e);
}

Poly RingPresentation::parse_poly_json(const nlohmann::json& j) const {
    Poly p;
    for (const auto& term : j) {
        if (!term.is_array() || term.size() < 2) throw PresentationError("polynomial term must be [coeff, {gen: exp}]");
        Int c(term[0].get<long long>());
        Monomial m = one();
        for (auto it = term[1].begin(); it != term[1].end(); ++it) m[index(it.key())] = it.value().get<int>();
        p.emplace_back(c, m);
    }
    return p;
}

Element RingPresentation::from_poly(const Poly& p) const {
    Element e;
    for (const auto& [c, m] : p) add_term(e, m, c);
    return normal_form(e);
}

std::string RingPresentation::format(const Monomial& m) const {
    std::vector<std::size_t> idx(gens_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::string out;
    for (std::size_t i : idx) {
        if (m[i] == 0) continue;
        const auto& g = gens_[i];
        long e = static_cast<long>(m[i]) * g.step;
        if (e == 1) {
            out += g.display;
        } else if (g.step > 1 || !compound_symbol(g.display)) {
            // tau2^k prints as a power of tau
            std::string base = g.display;
            out += base + superscript(e);
        } else {
            out += "(" + g.display + ")" + superscript(e);
        }
    }
    return out.empty() ? "1" : out;
}

std::string RingPresentation::format(const Element& e) const {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : e) {
        if (!out.empty()) out += " + ";
        std::string mono = format(m);
        if (c == 1) out += mono;
        else if (mono == "1") out += c.str();
        else out += c.str() + mono;
    }
    return out;
}

std::string RingPresentation::ascii(const Monomial& m) const {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += gens_[i].name;
        if (m[i] != 1) out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

Element RingPresentation::parse(const std::string& text) const {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_int = [&] {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return Int(text.substr(start, pos - start));
    };
    Element total;
    bool first = true;
    for (;;) {
        skip();
        if (pos >= text.size()) break;
        Int sign = 1;
        if (!first) {
            if (text[pos] == '+') ++pos;
            else if (text[pos] == '-') {
                sign = -1;
                ++pos;
            } else throw PresentationError("expected '+' in '" + text + "'");
        } else if (text[pos] == '-') {
            sign = -1;
            ++pos;
        }
        first = false;
        Element term = monomial_element(one(), sign);
        bool any = false;
        for (;;) {
            skip();
            if (pos >= text.size() || text[pos] == '+' || text[pos] == '-') break;
            if (text[pos] == '*') {
                ++pos;
                continue;
            }
            any = true;
            if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
                Int c = read_int();
                term = scale(term, c);
                continue;
            }
            std::size_t start = pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
            if (start == pos) throw PresentationError("unexpected character in '" + text + "'");
            std::string name = text.substr(start, pos - start);
            int exp = 1;
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip();
                exp = static_cast<int>(read_int());
            }
            // multiply one factor at a time so rewrite rules apply to products
            for (int k = 0; k < exp; ++k) term = multiply(term, monomial_element(gen(name)));
        }
        if (!any) throw PresentationError("empty term in '" + text + "'");
        total = add(total, term);
    }
    return normal_form(total);
}

nlohmann::json RingPresentation::to_json() const {
    nlohmann::json j = raw_;
    j["name"] = name_;
    j["grading"] = grading_ == Grading::Eta ? "eta" : "tri";
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : gens_) {
        nlohmann::json x;
        x["name"] = g.name;
        x["degree"] = {g.degree.s, g.degree.f, g.degree.w};
        x["torsion"] = static_cast<long long>(g.torsion);
        x["cap"] = g.cap ? nlohmann::json(*g.cap) : nlohmann::json(nullptr);
        x["display"] = g.display;
        if (g.step != 1) x["step"] = g.step;
        gens.push_back(x);
    }
    j["generators"] = gens;
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& r : rules_) {
        nlohmann::json lhs = nlohmann::json::object();
        for (std::size_t i = 0; i < r.lhs.size(); ++i)
            if (r.lhs[i]) lhs[gens_[i].name] = r.lhs[i];
        nlohmann::json rhs = nlohmann::json::array();
        for (const auto& [m, c] : normal_form(r.rhs)) {
            nlohmann::json mono = nlohmann::json::object();
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) mono[gens_[i].name] = m[i];
            rhs.push_back({static_cast<long long>(c), mono});
        }
        rules.push_back({{"lhs", lhs}, {"rhs", rhs}});
    }
    j["rules"] = rules;
    return j;
}

}  // namespace artifact
