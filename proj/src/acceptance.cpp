#include "artifact/acceptance.hpp"

#include "artifact/chart.hpp"
#include "artifact/objects.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#ifndef ARTIFACT_GOLDEN_DIR
#define ARTIFACT_GOLDEN_DIR "tests/golden"
#endif

namespace artifact {

namespace {

using Clock = std::chrono::steady_clock;

struct Ctx {
    CriterionResult* res;
    void fail(const std::string& m) {
        if (res->details.size() < 40) res->details.push_back(m);
        res->pass = false;
    }
    void note(const std::string& m) { res->details.push_back("note: " + m); }
    template <class T>
    void expect_eq(const T& got, const T& want, const std::string& what) {
        if (!(got == want)) {
            std::ostringstream o;
            o << what << ": got " << got << ", want " << want;
            fail(o.str());
        }
    }
};

// ---- independent helpers ----

Int brute_two_part(Int n) {
    Int p = 1;
    while (n != 0 && n % 2 == 0) {
        n /= 2;
        p *= 2;
    }
    return p;
}

Int pow_int(long long base, long long e) {
    Int r = 1;
    for (long long i = 0; i < e; ++i) r *= base;
    return r;
}

std::string superscript(int n) {
    static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    if (n == 1) return "";
    std::string out;
    for (char c : std::to_string(n)) out += digits[c - '0'];
    return out;
}

std::string sym(const std::string& s, int n) { return n == 0 ? "" : s + superscript(n); }

// exponents by generator name
using NamedMono = std::map<std::string, int>;

NamedMono named(const RingPresentation& p, const Monomial& m) {
    NamedMono out;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) out[p.generators()[i].name] = m[i];
    return out;
}

// hand-coded generator degrees, independent of the presentation files
const std::map<std::string, TriDegree>& oracle_degrees() {
    static const std::map<std::string, TriDegree> d{{"rho", {-1, 1, -1}}, {"tau", {0, 0, -1}}, {"tau2", {0, 0, -2}},
                                                    {"h1", {1, 1, 1}},    {"tauh1", {1, 1, 0}}, {"v1sq", {4, 0, 2}},
                                                    {"iota", {-1, 1, 0}}};
    return d;
}

// degree of the first term of an ASCII element like "4*iota*tau2^2*h1^3 + ..."
std::optional<TriDegree> oracle_degree(const std::string& text) {
    std::string term = text.substr(0, text.find_first_of("+-", 1));
    TriDegree d;
    std::stringstream ss(term);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
        tok.erase(0, tok.find_first_not_of(' '));
        tok.erase(tok.find_last_not_of(' ') + 1);
        if (tok.empty()) continue;
        if (std::isdigit(static_cast<unsigned char>(tok[0]))) continue;
        int e = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            e = std::stoi(tok.substr(caret + 1));
            tok = tok.substr(0, caret);
        }
        auto it = oracle_degrees().find(tok);
        if (it == oracle_degrees().end()) return std::nullopt;
        d = d + it->second * e;
    }
    return d;
}

// shared long computation
const ObjectRun& L_run() {
    static ObjectRun run = run_object("L");
    return run;
}

std::vector<Int> orders_at(const SpectralSequence& ss, int r, const TriDegree& d) {
    std::vector<Int> o;
    if (const DegPage* p = ss.at(r, d))
        for (const auto& x : p->summ) o.push_back(x.order);
    std::sort(o.begin(), o.end());
    return o;
}

std::string orders_str(const std::vector<Int>& o) {
    std::string s = "[";
    for (std::size_t i = 0; i < o.size(); ++i) s += (i ? " " : "") + (o[i] == 0 ? std::string("Z") : o[i].str());
    return s + "]";
}

// ---- criteria ----

void c_valuation(Ctx& t) {
    Int p = 1;
    std::size_t checked = 0;
    for (long long n = 1; n <= (1 << 16); ++n) {
        p *= 3;
        Int q = p - 1;
        unsigned brute = static_cast<unsigned>(boost::multiprecision::lsb(q));
        if (brute != val_3n_minus_1(n)) t.fail("n = " + std::to_string(n));
        ++checked;
    }
    t.note(std::to_string(checked) + " exponents");
}

std::set<std::pair<NamedMono, Int>> oracle_koC_E1(const TriDegree& d) {
    std::set<std::pair<NamedMono, Int>> out;
    int b = d.f;
    if (b < 0 || (d.s - b) < 0 || (d.s - b) % 4) return out;
    int c = (d.s - b) / 4;
    int a = b + 2 * c - d.w;
    if (a < 0) return out;
    NamedMono m;
    if (a) m["tau"] = a;
    if (b) m["h1"] = b;
    if (c) m["v1sq"] = c;
    out.insert({m, b ? Int(2) : Int(0)});
    return out;
}

std::set<std::pair<NamedMono, Int>> oracle_ko_E1(const TriDegree& d) {
    std::set<std::pair<NamedMono, Int>> out;
    for (int e = 0; e <= 1; ++e)
        for (int a = 0; a + e <= d.f; ++a) {
            int c = d.f - a - e;
            int num = d.s + a - c - e;
            if (num < 0 || num % 4) continue;
            int v = num / 4;
            int twob = -a + c + 2 * v - d.w;
            if (twob < 0 || twob % 2) continue;
            NamedMono m;
            if (a) m["rho"] = a;
            if (twob) m["tau2"] = twob / 2;
            if (c) m["h1"] = c;
            if (e) m["tauh1"] = e;
            if (v) m["v1sq"] = v;
            out.insert({m, (a || c || e) ? Int(2) : Int(0)});
        }
    return out;
}

void c_e1(Ctx& t) {
    for (const char* name : {"ko_C", "ko"}) {
        RingPresentation p = load_presentation(name);
        std::size_t n = 0;
        for (int s = -4; s <= 40; ++s)
            for (int f = 0; f <= 20; ++f)
                for (int w = -20; w <= 24; ++w) {
                    TriDegree d{s, f, w};
                    std::set<std::pair<NamedMono, Int>> got;
                    for (const auto& [m, o] : p.basis_at(d).basis) got.insert({named(p, m), o});
                    auto want = std::string(name) == "ko" ? oracle_ko_E1(d) : oracle_koC_E1(d);
                    n += want.size();
                    if (got != want)
                        t.fail(std::string(name) + " " + d.str() + ": " + std::to_string(got.size()) + " vs " +
                               std::to_string(want.size()) + " monomials");
                }
        t.note(std::string(name) + ": " + std::to_string(n) + " basis elements");
    }
}

void c_leibniz(Ctx& t) {
    auto cx = make_complex("ko");
    const auto& p = cx->ring();
    Element src = p.parse("tau2*tauh1*v1sq");
    Element got = cx->d1(src.begin()->first);
    Element want = p.parse("tau2^2*h1^4 + rho^4*v1sq^2");
    if (got != want) t.fail("d1(tau2*tauh1*v1sq) = " + p.format(got));
    for (const char* name : {"ko_C", "ko", "L_C", "L"}) {
        auto c = make_complex(name);
        std::size_t n = 0;
        for (int s = -4; s <= 24; ++s)
            for (int f = 0; f <= 12; ++f)
                for (int w = -12; w <= 24; ++w)
                    for (const auto& cell : c->cells({s, f, w})) {
                        Element dd;
                        for (const auto& [m, k] : c->d1(cell.m)) dd = add(dd, scale(c->d1(m), k));
                        dd = c->normalize(dd);
                        ++n;
                        if (!dd.empty()) t.fail(std::string(name) + ": d1 d1 " + c->ring().ascii(cell.m) + " != 0");
                    }
        t.note(std::string(name) + ": d1 d1 = 0 on " + std::to_string(n) + " cells");
    }
}

void c_koC_einf(Ctx& t) {
    Window w{{0, 0, -12}, {24, 24, 24}};
    auto run = run_object("ko_C", w, default_pages("ko_C"));
    const int rinf = run->r_max() + 1;
    std::size_t n = 0;
    for (int s = w.lo.s; s <= w.hi.s; ++s)
        for (int f = w.lo.f; f <= w.hi.f; ++f)
            for (int wt = w.lo.w; wt <= w.hi.w; ++wt) {
                TriDegree d{s, f, wt};
                // tau^a h1^b (2v1^2)^e v1^{4c}
                std::vector<std::pair<Int, std::string>> want;
                int b = f;
                for (int e = 0; e <= 1; ++e) {
                    int rest = s - b - 4 * e;
                    if (rest < 0 || rest % 8) continue;
                    int c = rest / 8;
                    int a = b + 2 * e + 4 * c - wt;
                    if (a < 0) continue;
                    if (b > 0 && e == 1) continue;
                    if (b >= 3 && a > 0) continue;
                    std::string label = (e ? "2" : "") + sym("τ", a) + sym("h₁", b) + sym("v₁", 2 * e + 4 * c);
                    if (label.empty()) label = "1";
                    want.push_back({b ? Int(2) : Int(0), label});
                }
                std::vector<std::pair<Int, std::string>> got;
                if (const DegPage* p = run->at(rinf, d))
                    for (const auto& x : p->summ) got.push_back({x.order, x.label});
                std::sort(want.begin(), want.end());
                std::sort(got.begin(), got.end());
                n += want.size();
                if (got != want) {
                    std::string g, wv;
                    for (auto& [o, l] : got) g += " " + l + "/" + o.str();
                    for (auto& [o, l] : want) wv += " " + l + "/" + o.str();
                    t.fail(d.str() + ": got" + g + "; want" + wv);
                }
            }
    t.note(std::to_string(n) + " E_inf summands");
}

void c_ko_einf(Ctx& t) {
    Window w{{-4, 0, -12}, {40, 20, 48}};
    auto run = run_object("ko", w, default_pages("ko"));
    const int rinf = run->r_max() + 1;
    const auto& p = run.cx->ring();
    TriDegree d{4, 4, 0};
    auto lhs = run->coords(2, d, run.cx->normalize(p.parse("tau2^2*h1^4")));
    auto rhs = run->coords(2, d, run.cx->normalize(p.parse("rho^4*v1sq^2")));
    if (!lhs || !rhs) {
        t.fail("tau^4 h1^4 or rho^4 v1^4 is not an E_2 class");
    } else {
        std::vector<Int> diff(lhs->size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = (*lhs)[i] - (*rhs)[i];
        if (!run->is_zero_class(2, d, diff)) t.fail("tau^4 h1^4 != rho^4 v1^4 in E_2");
        if (run->is_zero_class(2, d, *lhs)) t.fail("tau^4 h1^4 vanishes in E_2");
    }
    std::size_t zero3 = 0, same = 0;
    for (int s = w.lo.s; s <= w.hi.s; ++s)
        for (int f = w.lo.f; f <= w.hi.f; ++f)
            for (int wt = w.lo.w; wt <= w.hi.w; ++wt) {
                TriDegree e{s, f, wt};
                auto inf = orders_at(*run, rinf, e);
                if (((s - wt) % 4 + 4) % 4 == 3) {
                    ++zero3;
                    if (!inf.empty()) t.fail("E_inf nonzero in coweight 3 mod 4 at " + e.str());
                }
                if (orders_at(*run, 2, e) != inf) t.fail("E_2 != E_inf at " + e.str());
                ++same;
            }
    t.note(std::to_string(zero3) + " degrees in coweight 3 mod 4, " + std::to_string(same) + " degrees compared");
}

void c_les(Ctx& t) {
    for (const char* name : {"L", "L_C"}) {
        auto cx = make_complex(name);
        auto& fc = dynamic_cast<const FiberComplex&>(*cx);
        std::size_t n = 0;
        for (int s = -4; s <= 40; ++s)
            for (int f = 0; f <= 20; ++f)
                for (int w = -20; w <= 24; ++w) {
                    LesCheck c = les_check(fc, {s, f, w});
                    ++n;
                    if (!c.ok())
                        t.fail(std::string(name) + " " + c.d.str() + ": |L| = " + c.tors_L.str() + " free " +
                               std::to_string(c.free_L) + ", ker·coker = " + c.tors_ker.str() + "·" + c.tors_coker.str());
                }
        const auto& p = fc.ring();
        for (int k = 0; 4 * k - 1 <= 40; ++k) {
            Monomial m = p.gen("iota");
            m[p.index("v1sq")] = k;
            auto o = fc.cell_order(m);
            Int want = k == 0 ? Int(0) : brute_two_part(pow_int(9, k) - 1);
            if (!o || *o != want) t.fail(std::string(name) + ": iota v1^" + std::to_string(2 * k) + " order");
            if (k >= 1 && want != Int(1) << (v2(Int(2 * k)) + 2)) t.fail("2^{v(2k)+2} formula at k = " + std::to_string(k));
            auto expect_cell = [&](const std::string& text, const Int& ord) {
                Monomial mm = p.parse(text).begin()->first;
                auto co = fc.cell_order(mm);
                if (!co || *co != ord) t.fail(std::string(name) + ": " + text + " is not a cell of order " + ord.str());
            };
            std::string vk = k ? "*v1sq^" + std::to_string(k) : "";
            if (std::string(name) == "L") {
                expect_cell("rho" + vk, 2);
                expect_cell("tauh1" + vk, 2);
                if (k == 0) expect_cell("tau2", 0);
            }
            expect_cell("h1" + vk, 2);
        }
        t.note(std::string(name) + ": " + std::to_string(n) + " degrees");
    }
}

void c_l_differentials(Ctx& t) {
    const auto& run = L_run();
    const auto& fc = dynamic_cast<const FiberComplex&>(*run.cx);
    const auto& p = fc.ring();
    auto v = [](int e) { return e ? "*v1sq^" + std::to_string(e) : std::string(); };
    auto check = [&](const std::string& x, const std::string& dx) {
        Monomial m = p.parse(x).begin()->first;
        Element got = fc.d1(m);
        Element want = dx.empty() ? Element{} : fc.normalize(p.parse(dx));
        if (got != want) t.fail("d1(" + x + ") = " + p.format(got) + ", want " + (dx.empty() ? "0" : dx));
    };
    check("tau2", "rho^2*tauh1");
    std::size_t rows = 1;
    for (int k = 0; 8 * k + 5 <= 48; ++k) {
        if (k >= 1) check("rho" + v(2 * k), "");
        check("rho" + v(2 * k + 1), "rho*h1^2*tauh1" + v(2 * k));
        check("h1" + v(2 * k), "");
        check("h1" + v(2 * k + 1), "h1^3*tauh1" + v(2 * k));
        check("tauh1" + v(2 * k + 1), "tau2*h1^4" + v(2 * k) + " + rho^2*h1^2" + v(2 * k + 1));
        check("tauh1" + v(2 * k), "");
        check("iota" + v(2 * k + 1), "tauh1*h1^2*iota" + v(2 * k));
        check("iota" + v(2 * k), "");
        rows += 8;
    }
    t.note(std::to_string(rows) + " table instances");
    std::size_t n = 0;
    for (const auto& d : run->inner_degrees())
        for (const auto& c : run->cells(d)) {
            ++n;
            if (fc.d1(c.m) != fc.restricted_d1(c.m)) t.fail("d1 differs from the restricted base d1 on " + p.ascii(c.m));
        }
    t.note(std::to_string(n) + " cells against the restricted base differential");
    for (const auto& e : run->rule_errors()) t.fail(e);
    auto rule = std::dynamic_pointer_cast<CoweightRule>(run.rule);
    if (!rule || rule->assigned == 0) t.fail("no higher differentials assigned");
    else t.note(std::to_string(rule->assigned) + " higher differentials assigned");
}

void c_l_einf(Ctx& t) {
    const auto& run = L_run();
    const auto& ss = *run.ss;
    const int rinf = ss.r_max() + 1;
    std::size_t n = 0;
    for (const auto& d : ss.inner_degrees()) {
        int c = ((d.coweight() % 4) + 4) % 4;
        if (c != 1 && c != 2) continue;
        ++n;
        auto e2 = orders_at(ss, 2, d), ei = orders_at(ss, rinf, d);
        if (e2 != ei) t.fail("E_2 != E_inf at " + d.str() + ": " + orders_str(e2) + " vs " + orders_str(ei));
    }
    t.note(std::to_string(n) + " degrees in coweights 1, 2 mod 4");
    // columns in the upper stems run well past the inner filtration range
    Window w = ss.inner();
    w.hi.f = std::max(w.hi.f, w.hi.s + 8);
    auto ex = expand_ledger(ledger_for("L"), ss, w);
    for (const auto& e : ex.errors) t.fail(e);
    for (int j : {1, 2, 3, 4, 6, 8}) {
        int c = 4 * j - 1;
        int lo = std::max(w.lo.s, c + w.lo.w), hi = std::min(w.hi.s, c + w.hi.w);
        auto rep = order_pattern_check(ss, ex.ext, j, lo, hi, w.hi.f);
        for (const auto& f : rep.failures) t.fail(f);
        std::size_t generic = 0;
        std::string exc;
        for (const auto& r : rep.rows) {
            if (r.generic) ++generic;
            else exc += " " + std::to_string(r.stem) + ":" + r.found.str();
        }
        if (generic == 0) t.fail("coweight " + std::to_string(c) + ": no generic stems in the window");
        t.note("coweight " + std::to_string(c) + ": " + std::to_string(generic) + " generic stems of order " +
               (Int(1) << (v2(Int(j)) + 3)).str() + "; exceptional stems" + exc);
    }
}

void c_eta(Ctx& t) {
    const auto& run = L_run();
    auto ecx = make_complex("L_eta");
    auto erule = make_rule(*ecx);
    Localization loc(run.cx->ring(), ecx->ring());
    Window ew = eta_window(loc, run->inner());
    SpectralSequence eta(*ecx, ew, default_pages("L_eta"), erule);
    auto rep = compare(*run, eta, loc, 6);
    for (const auto& m : rep.mismatches) t.fail(m);
    t.note(std::to_string(rep.checked) + " summands compared, " + std::to_string(rep.nonzero) + " with nonzero differentials");
    const auto& p = ecx->ring();
    for (int n = 2; n <= 5; ++n) {
        int k = 1 << (n - 1);
        Element src = p.parse("v1sq^" + std::to_string(k));
        TriDegree d = p.grade_of(src.begin()->first);
        auto c = eta.coords(n + 1, d, src);
        if (!c) {
            t.fail("v1^" + std::to_string(2 * k) + " does not survive to E_" + std::to_string(n + 1));
            continue;
        }
        const IntMatrix& dm = eta.diff(n + 1, d);
        TriDegree td = d + ecx->shift(n + 1);
        Element want = ecx->normalize(p.parse("rho^" + std::to_string(n + 1) + "*iota*v1sq^" + std::to_string(k)));
        auto wc = eta.coords(n + 1, td, want);
        std::vector<Int> got = dm.rows() ? mat_vec(dm, *c) : std::vector<Int>();
        bool ok = wc && !eta.is_zero_class(n + 1, td, *wc);
        if (ok) {
            std::vector<Int> delta = *wc;
            for (std::size_t i = 0; i < delta.size(); ++i) delta[i] -= i < got.size() ? got[i] : Int(0);
            ok = eta.is_zero_class(n + 1, td, delta);
        }
        if (!ok) t.fail("d_" + std::to_string(n + 1) + "(v1^" + std::to_string(2 * k) + ") != rho^" + std::to_string(n + 1) + " iota v1^" + std::to_string(2 * k));
    }
    for (const auto& e : eta.rule_errors()) t.fail(e);
}

void c_ledger(Ctx& t) {
    std::map<std::string, std::size_t> expect_rows{{"ko", 6}, {"L", 13}};
    for (const char* name : {"ko", "L", "L_C"}) {
        auto rows = ledger_for(name);
        if (expect_rows.count(name) && rows.size() != expect_rows[name])
            t.fail(std::string(name) + ": " + std::to_string(rows.size()) + " ledger rows");
        auto cx = make_complex(name);
        for (const auto& r : rows) {
            for (const auto& e : check_row(r, *cx)) t.fail(e);
            auto ds = oracle_degree(r.source), dt = oracle_degree(r.target);
            std::string at = std::string(name) + " line " + std::to_string(r.line);
            if (!ds || !dt) {
                t.fail(at + ": unknown symbol");
                continue;
            }
            TriDegree k = r.kind == "rho" ? TriDegree{-1, 1, -1} : r.kind == "eta" ? TriDegree{1, 1, 1} : TriDegree{0, 0, 0};
            if ((r.degree_of == "source" ? *ds : *dt) != r.listed) t.fail(at + ": listed degree");
            if (dt->s != ds->s + k.s || dt->w != ds->w + k.w || dt->f <= ds->f + k.f) t.fail(at + ": kind arithmetic");
            if (ds->s - ds->w != r.coweight) t.fail(at + ": coweight");
        }
        Window w = default_window(name);
        auto run_cx = make_complex(name);
        auto rule = make_rule(*run_cx);
        SpectralSequence ss(*run_cx, w, default_pages(name), rule);
        auto ex = expand_ledger(rows, ss, w);
        for (const auto& e : ex.errors) t.fail(e);
        t.note(std::string(name) + ": " + std::to_string(rows.size()) + " rows, " + std::to_string(ex.checked) +
               " expansions present, " + std::to_string(ex.skipped.size()) + " leave the window");

        if (std::string(name) != "L") continue;
        const int rinf = ss.r_max() + 1;
        // 2 tau^2 v1^{4k} is not a permanent cycle
        for (int k = 1; k <= 2; ++k) {
            Element e = ss.complex().ring().parse("2*tau2*v1sq^" + std::to_string(2 * k));
            TriDegree d = ss.complex().ring().degree_of(e.begin()->first);
            bool cycle = false;
            try {
                auto c = ss.coords(rinf, d, ss.complex().normalize(e));
                cycle = c && !ss.is_zero_class(rinf, d, *c);
            } catch (const std::logic_error&) {
                cycle = false;  // not even an E_1 cell
            }
            if (cycle) t.fail("2 tau^2 v1^" + std::to_string(4 * k) + " is a permanent cycle");
        }
        for (const auto& h : ex.ext)
            if (h.kind == "eta" && h.row->source == "2*tau2" && h.v_k > 0) t.fail("2 tau^2 expanded along v1^4");
        bool seen16 = false, seen_top = false;
        for (const auto& h : ex.ext) {
            if (h.row->has("highest_target") == false && h.row->source == "8*iota*tau2*v1sq^2" && h.v_k == 1 && h.tau_k == 0) {
                seen16 = true;
                if (h.source_label != "ι16τ²v₁⁸" || h.target_label != "ρ²τh₁v₁⁸")
                    t.fail("v1^4 multiple of the 8 tau^2 extension: " + h.source_label + " -> " + h.target_label);
            }
            if (h.row->has("highest_target") && h.tau_k == 1 && h.v_k == 0) {
                seen_top = true;
                Element want = ss.complex().normalize(ss.complex().ring().parse("iota*rho^3*tau2^4*h1^7"));
                auto wc = ss.coords(rinf, {3, 11, -4}, want);
                if (h.target_deg != TriDegree{3, 11, -4} || !wc || h.target_coords != *wc)
                    t.fail("tau^4 multiple of the (tau h1)^3 extension lands on " + h.target_label + " at " + h.target_deg.str());
            }
        }
        if (!seen16) t.fail("no h extension from iota 16 tau^2 v1^8");
        if (!seen_top) t.fail("no h extension from (tau h1)^2 tau^5 h1");
    }
}

void c_image_of_j(Ctx& t) {
    auto cx = make_complex("L_C");
    auto rule = make_rule(*cx);
    Window w{{-1, 0, 0}, {260, 4, 130}};
    SpectralSequence ss(*cx, w, default_pages("L_C"), rule);
    auto ex = expand_ledger(ledger_for("L_C"), ss, w);
    for (const auto& e : ex.errors) t.fail(e);
    const int rinf = ss.r_max() + 1;
    const auto& fc = dynamic_cast<const FiberComplex&>(*cx);
    for (int k = 1; k <= 64; ++k) {
        Int oracle = brute_two_part(pow_int(9, k) - 1);
        Monomial m = fc.ring().gen("iota");
        m[fc.ring().index("v1sq")] = k;
        TriDegree d{4 * k - 1, 1, 2 * k};
        auto co = fc.cell_order(m);
        if (!co || *co != oracle) t.fail("E_1 order of iota v1^" + std::to_string(2 * k));
        if (k % 2 == 0) {
            // stem 8m - 1: also the classical image of J order 2^{v(8m)+1}
            auto o = orders_at(ss, rinf, d);
            Int classical = Int(1) << (v2(Int(4 * k)) + 1);
            if (o.size() != 1 || o[0] != oracle || oracle != classical)
                t.fail("E_inf at " + d.str() + " is " + orders_str(o) + ", want Z/" + oracle.str());
        } else {
            HomotopyGroup g = assemble(ss, d.s, d.w, ex.ext, 4);
            if (g.group.summands.size() != 1 || g.exponent() != oracle || oracle != 8)
                t.fail("pi at " + d.str() + " is " + g.headline() + ", want Z/" + oracle.str());
        }
    }
    t.note("k = 1..64, stems 3..255");
}

std::vector<ChartSpec> golden_specs() {
    ChartSpec a;
    a.object = "ko_C";
    a.residue = 0;
    a.modulus = 1;
    a.stem_lo = 0;
    a.stem_hi = 24;
    a.f_cap = 12;
    ChartSpec b;
    b.object = "L";
    b.residue = 1;
    b.modulus = 4;
    b.stem_lo = -4;
    b.stem_hi = 32;
    b.f_cap = 12;
    ChartSpec c = b;
    c.residue = 3;
    c.modulus = 8;
    return {a, b, c};
}

// ko_C modulo tau: 1, h1, h1^2 survive tau-periodically, 2v1^2 and v1^4 lead the next block, h1^n for n >= 3 is tau-torsion
std::set<std::tuple<int, int, std::string, std::string>> oracle_koC_chart(int stem_hi, int f_cap) {
    std::set<std::tuple<int, int, std::string, std::string>> out;
    for (int k = 0; 4 * k <= stem_hi; ++k) {
        out.insert({4 * k, 0, "box", "black"});
        if (k % 2) continue;
        for (int n = 1; n <= f_cap && 4 * k + n <= stem_hi; ++n) out.insert({4 * k + n, n, "circle", n >= 3 ? "red" : "black"});
    }
    return out;
}

void c_charts(Ctx& t) {
    {
        ChartSpec spec = golden_specs().front();
        std::set<std::tuple<int, int, std::string, std::string>> got;
        for (const auto& d : render_chart(spec).data) got.insert({d.s, d.f, d.glyph, d.color});
        if (got != oracle_koC_chart(spec.stem_hi, spec.f_cap)) t.fail("ko_C chart glyphs differ from the closed form");
    }
    for (const auto& spec : golden_specs()) {
        std::string path = golden_dir() + "/" + chart_basename(spec) + ".txt";
        std::ifstream in(path);
        if (!in) {
            t.fail("missing golden " + path);
            continue;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        RenderedChart rc = render_chart(spec);
        for (const auto& e : rc.ledger_errors) t.fail(e);
        if (rc.sidecar != buf.str()) t.fail(chart_basename(spec) + " differs from the golden chart data");
        if (parse_sidecar(rc.sidecar) != rc.data) t.fail(chart_basename(spec) + ": chart data does not round-trip");
        if (emit_svg(rc.data, spec) != rc.svg) t.fail(chart_basename(spec) + ": SVG is not deterministic");
        t.note(chart_basename(spec) + ": " + std::to_string(rc.data.size()) + " glyphs");
    }
}

struct Criterion {
    int id;
    std::string suite, title;
    double limit;  // seconds, 0 = none
    std::function<void(Ctx&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "valuation", "v2(3^n - 1) closed form for n <= 2^16", 10, c_valuation},
        {2, "e1", "E_1 bases of ko_C and ko against monomial enumeration", 5, c_e1},
        {3, "leibniz", "d1 d1 = 0 and d1(tau^2 tau h1 v1^2) = tau^4 h1^4 + rho^4 v1^4", 0, c_leibniz},
        {4, "ko-c-einf", "E_inf(ko_C) generators and orders, stems <= 24", 0, c_koC_einf},
        {5, "ko-einf", "E_2(ko) = E_inf(ko), relation and vanishing in coweight 3 mod 4", 0, c_ko_einf},
        {6, "les", "fiber order identity and E_1(L) generator families", 30, c_les},
        {7, "l-differentials", "d1 table for L and the higher differential pattern", 0, c_l_differentials},
        {8, "l-einf", "E_2 = E_inf in coweights 1, 2 mod 4 and the 2^{v(j)+3} orders", 0, c_l_einf},
        {9, "eta", "eta localization commutes with d_r, pages <= 6", 0, c_eta},
        {10, "ledger", "hidden extension ledger and its periodic families", 0, c_ledger},
        {11, "image-of-j", "iota v1^{2k} orders in L_C against 9^k - 1, k <= 64", 0, c_image_of_j},
        {12, "charts", "chart data against golden files", 0, c_charts},
    };
    return list;
}

}  // namespace

std::string golden_dir() {
    if (const char* env = std::getenv("ARTIFACT_GOLDEN")) return env;
    return ARTIFACT_GOLDEN_DIR;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& c : criteria()) n.push_back(c.suite);
        return n;
    }();
    return names;
}

std::vector<CriterionResult> run_acceptance(const std::string& suite, std::ostream& out) {
    std::vector<CriterionResult> results;
    for (const auto& c : criteria()) {
        if (!suite.empty() && suite != c.suite) continue;
        CriterionResult r;
        r.id = c.id;
        r.suite = c.suite;
        r.title = c.title;
        r.pass = true;
        Ctx ctx{&r};
        auto t0 = Clock::now();
        try {
            c.run(ctx);
        } catch (const std::exception& e) {
            ctx.fail(std::string("exception: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (c.limit > 0 && r.seconds > c.limit) ctx.fail("took longer than " + std::to_string(int(c.limit)) + " s");
        out << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << std::left << std::setw(16) << r.suite
            << std::right << " " << r.title << "  (" << std::fixed << std::setprecision(1) << r.seconds << " s)\n";
        for (const auto& d : r.details) out << "        " << d << "\n";
        out.flush();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace artifact
