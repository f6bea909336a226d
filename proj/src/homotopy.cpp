#include "artifact/homotopy.hpp"
#include "artifact/objects.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace artifact {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == '\t') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" ");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" ") - b + 1);
}

// degree of a homogeneous element, nullopt for 0 or mixed degrees
std::optional<TriDegree> degree_of(const RingPresentation& p, const Element& e) {
    std::optional<TriDegree> d;
    for (const auto& [m, c] : e) {
        TriDegree t = p.degree_of(m);
        if (d && *d != t) return std::nullopt;
        d = t;
    }
    return d;
}

// generator and exponent giving tau^4 or v1^4
std::pair<std::size_t, int> periodicity_gen(const RingPresentation& p, const TriDegree& unit) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& d = p.generators()[i].degree;
        for (int k : {1, 2, 4})
            if (d * k == unit) return {i, k};
    }
    throw PresentationError(p.name() + " has no generator dividing " + unit.str());
}

const TriDegree kTau4{0, 0, -4};
const TriDegree kV4{8, 0, 4};

const Cell& cell_at(const SpectralSequence& ss, const Monomial& m) {
    TriDegree d = ss.complex().ring().degree_of(m);
    for (const auto& c : ss.cells(d))
        if (c.m == m) return c;
    throw std::logic_error(ss.complex().ring().ascii(m) + " is not an E1 cell");
}

// multiply by tau^{4a} v1^{4b}; iota terms keep their order, so coefficients scale with the cell
Element translate(const SpectralSequence& ss, const Element& e, int a, int b) {
    const auto& p = ss.complex().ring();
    auto [ti, tk] = periodicity_gen(p, kTau4);
    auto [vi, vk] = periodicity_gen(p, kV4);
    Element out;
    for (const auto& [m, c] : e) {
        Monomial t = m;
        t[ti] += tk * a;
        t[vi] += vk * b;
        Int coef = c;
        if (cell_at(ss, m).iota) {
            Int o = cell_at(ss, m).order, o2 = cell_at(ss, t).order;
            if (o != 0 && o2 != 0) {
                if (o2 >= o) {
                    coef = c * (o2 / o);
                } else {
                    Int q = o / o2;
                    if (c % q != 0) throw std::logic_error("cannot carry " + p.ascii(m) + " to " + p.ascii(t));
                    coef = c / q;
                }
            }
        }
        add_term(out, t, coef);
    }
    return ss.complex().normalize(out);
}

int einf_page(const SpectralSequence& ss) { return ss.r_max() + 1; }

std::optional<std::vector<Int>> einf_class(const SpectralSequence& ss, const TriDegree& d, const Element& e) {
    auto c = ss.coords(einf_page(ss), d, e);
    if (!c || ss.is_zero_class(einf_page(ss), d, *c)) return std::nullopt;
    return c;
}

std::vector<Int> reduced(const SpectralSequence& ss, const TriDegree& d, std::vector<Int> v) {
    const DegPage* p = ss.at(einf_page(ss), d);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = reduce_mod(v[i], p->summ[i].order);
    return v;
}

}  // namespace

std::vector<LedgerRow> load_ledger(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<LedgerRow> rows;
    std::string line;
    int n = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++n;
        if (trim(line).empty() || line[0] == '#') continue;
        auto f = split_tabs(line);
        if (!header) {
            if (f.empty() || f[0] != "object") throw std::runtime_error(path + ": missing header");
            header = true;
            continue;
        }
        if (f.size() < 10) throw std::runtime_error(path + ":" + std::to_string(n) + ": expected 10 columns");
        LedgerRow r;
        r.line = n;
        r.object = trim(f[0]);
        r.coweight = std::stoi(f[1]);
        r.source = trim(f[2]);
        r.kind = trim(f[3]);
        r.target = trim(f[4]);
        r.listed = {std::stoi(f[5]), std::stoi(f[6]), std::stoi(f[7])};
        r.degree_of = trim(f[8]);
        r.proof = trim(f[9]);
        if (f.size() > 10) {
            std::stringstream fl(f[10]);
            std::string tok;
            while (std::getline(fl, tok, ','))
                if (!trim(tok).empty()) r.flags.insert(trim(tok));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<LedgerRow> ledger_for(const std::string& object) {
    std::string path = data_dir() + "/ledger/" + object + ".tsv";
    if (!std::filesystem::exists(path)) return {};
    return load_ledger(path);
}

TriDegree kind_degree(const std::string& kind) {
    if (kind == "rho") return {-1, 1, -1};
    if (kind == "h") return {0, 0, 0};
    if (kind == "eta") return {1, 1, 1};
    throw std::invalid_argument("unknown extension kind " + kind);
}

std::string kind_symbol(const std::string& kind) {
    if (kind == "rho") return "ρ";
    if (kind == "eta") return "η";
    return kind;
}

std::vector<std::string> check_row(const LedgerRow& row, const E1Complex& cx) {
    std::vector<std::string> err;
    std::string at = row.object + " line " + std::to_string(row.line) + ": ";
    if (row.object != cx.name()) err.push_back(at + "row belongs to " + row.object);
    if (row.degree_of != "source" && row.degree_of != "target") err.push_back(at + "degree column must name source or target");
    TriDegree kd;
    try {
        kd = kind_degree(row.kind);
    } catch (const std::exception& e) {
        err.push_back(at + e.what());
        return err;
    }
    Element src, tgt;
    try {
        src = cx.ring().parse(row.source);
        tgt = cx.ring().parse(row.target);
    } catch (const std::exception& e) {
        err.push_back(at + e.what());
        return err;
    }
    auto ds = degree_of(cx.ring(), src), dt = degree_of(cx.ring(), tgt);
    if (!ds || !dt) {
        err.push_back(at + "endpoints must be nonzero and homogeneous");
        return err;
    }
    TriDegree listed = row.degree_of == "target" ? *dt : *ds;
    if (listed != row.listed) err.push_back(at + "listed degree " + row.listed.str() + " but the " + row.degree_of + " sits in " + listed.str());
    if (ds->coweight() != row.coweight) err.push_back(at + "coweight column disagrees with the source");
    if (dt->s - ds->s != kd.s || dt->w - ds->w != kd.w)
        err.push_back(at + row.kind + " moves " + ds->str() + " to stem/weight " + std::to_string(ds->s + kd.s) + "," +
                      std::to_string(ds->w + kd.w) + ", not " + dt->str());
    if (dt->f <= ds->f + kd.f) err.push_back(at + "target filtration does not exceed the page product");
    return err;
}

Expansion expand_ledger(const std::vector<LedgerRow>& rows, const SpectralSequence& ss, const Window& w) {
    Expansion ex;
    const E1Complex& cx = ss.complex();
    for (const auto& row : rows) {
        auto errs = check_row(row, cx);
        if (!errs.empty()) {
            ex.errors.insert(ex.errors.end(), errs.begin(), errs.end());
            continue;
        }
        const Element src0 = cx.ring().parse(row.source), tgt0 = cx.ring().parse(row.target);
        const TriDegree ds0 = *degree_of(cx.ring(), src0), dt0 = *degree_of(cx.ring(), tgt0);
        const TriDegree kd = kind_degree(row.kind);
        const int bmax = row.has("v4") ? 1 << 20 : 0, amax = row.has("tau4") ? 1 << 20 : 0;
        for (int b = 0; b <= bmax; ++b) {
            if ((ds0 + kV4 * b).s > w.hi.s) break;
            for (int a = 0; a <= amax; ++a) {
                TriDegree ds = ds0 + kV4 * b + kTau4 * a, dt = dt0 + kV4 * b + kTau4 * a;
                if (ds.w < w.lo.w) break;
                if (!w.contains(ds)) continue;
                std::string where = row.object + " line " + std::to_string(row.line) + " tau^" + std::to_string(4 * a) +
                                    " v1^" + std::to_string(4 * b) + ": ";
                HiddenExtension h;
                h.row = &row;
                h.tau_k = a;
                h.v_k = b;
                h.kind = row.kind;
                h.source_deg = ds;
                try {
                    h.source = translate(ss, src0, a, b);
                } catch (const std::exception& e) {
                    ex.errors.push_back(where + e.what());
                    continue;
                }
                h.source_label = cx.label(h.source);
                auto sc = einf_class(ss, ds, h.source);
                if (row.has("highest_target")) {
                    // the top nonzero E_infinity class of the target column
                    std::optional<TriDegree> top;
                    for (int f = ds.f + kd.f + 1; f <= w.hi.f; ++f) {
                        TriDegree d{ds.s + kd.s, f, ds.w + kd.w};
                        const DegPage* p = ss.at(einf_page(ss), d);
                        if (p && !p->summ.empty()) top = d;
                    }
                    if (!top) {
                        ex.errors.push_back(where + "no class above " + h.source_label + " for " + row.kind);
                        continue;
                    }
                    if (top->f >= w.hi.f - 1) {
                        ex.skipped.push_back(where + "target column reaches the filtration cap");
                        continue;
                    }
                    const DegPage* p = ss.at(einf_page(ss), *top);
                    if (p->summ.size() != 1) {
                        ex.errors.push_back(where + "top class at " + top->str() + " is not unique");
                        continue;
                    }
                    dt = *top;
                    h.target = ss.lift_element(einf_page(ss), dt, std::vector<Int>{1});
                    if (a == 0 && b == 0 && (dt != dt0 || !ss.is_zero_class(einf_page(ss), dt,
                                                                           *ss.coords(einf_page(ss), dt, add(h.target, scale(tgt0, -1))))))
                        ex.errors.push_back(where + "listed target is not the top class " + cx.label(h.target));
                } else {
                    if (!w.contains(dt)) {
                        ex.skipped.push_back(where + "target " + dt.str() + " is outside the window");
                        continue;
                    }
                    try {
                        h.target = translate(ss, tgt0, a, b);
                    } catch (const std::exception& e) {
                        ex.errors.push_back(where + e.what());
                        continue;
                    }
                }
                h.target_deg = dt;
                h.target_label = cx.label(h.target);
                ++ex.checked;
                auto tc = einf_class(ss, dt, h.target);
                if (!sc) ex.errors.push_back(where + "source " + h.source_label + " at " + ds.str() + " is not a nonzero E_inf class");
                if (!tc) ex.errors.push_back(where + "target " + h.target_label + " at " + dt.str() + " is not a nonzero E_inf class");
                if (!sc || !tc) continue;
                h.source_coords = reduced(ss, ds, *sc);
                h.target_coords = reduced(ss, dt, *tc);
                ex.ext.push_back(std::move(h));
            }
        }
    }
    return ex;
}

Int HomotopyGroup::exponent() const {
    Int e = 1;
    for (const auto& [name, o] : group.summands)
        if (o != 0 && o > e) e = o;
    return e;
}

std::string HomotopyGroup::headline() const {
    if (group.trivial()) return "0";
    std::string out;
    for (const auto& [gen, o] : group.summands) {
        if (!out.empty()) out += " ⊕ ";
        out += o == 0 ? "Z" : "Z/" + o.str();
    }
    std::string gens;
    for (const auto& [gen, o] : group.summands) gens += (gens.empty() ? "" : ", ") + gen;
    return out + (group.summands.size() == 1 ? ", generator " : ", generators ") + gens;
}

HomotopyGroup assemble(const SpectralSequence& ss, int s, int w, const std::vector<HiddenExtension>& ext, int f_cap) {
    HomotopyGroup g;
    const E1Complex& cx = ss.complex();
    g.object = cx.name();
    g.s = s;
    g.w = w;
    if (!cx.tri_graded()) {
        g.errors.push_back(cx.name() + " is not tri-graded");
        return g;
    }
    const int rinf = einf_page(ss);
    std::map<std::pair<TriDegree, std::size_t>, std::size_t> col;
    for (int f = 0; f <= f_cap; ++f) {
        TriDegree d{s, f, w};
        const DegPage* p = ss.at(rinf, d);
        if (!p) continue;
        for (std::size_t i = 0; i < p->summ.size(); ++i) {
            col[{d, i}] = g.classes.size();
            g.classes.push_back({d, i, p->summ[i].order, p->summ[i].label});
            if (f >= f_cap - 1) g.truncated = true;
        }
    }
    const std::size_t n = g.classes.size();
    int c = s - w;
    int n2 = 0;
    for (int x = c + 1; x % 2 == 0 && x != 0; x /= 2) ++n2;
    g.provenance = c % 4 == 3 && n2 > 4 ? "extrapolated: coweight " + std::to_string(c) + " lies beyond the charted families"
                                          : "certified: coweight " + std::to_string(c) + " follows the charted families";

    auto gen_elt = [&](const std::string& name) -> std::optional<Element> {
        if (!cx.ring().has(name)) return std::nullopt;
        return cx.ring().monomial_element(cx.ring().gen(name));
    };
    const auto rho = gen_elt("rho"), h1 = gen_elt("h1");
    using Cls = std::pair<TriDegree, std::vector<Int>>;
    auto text = [&](const std::optional<Cls>& v) -> std::string {
        if (!v) return "0";
        return cx.label(ss.lift_element(rinf, v->first, v->second));
    };
    auto page_product = [&](const Cls& x, const std::optional<Element>& by, const std::string& what) -> std::optional<Cls> {
        if (!by) return std::nullopt;
        Element prod = cx.multiply(ss.lift_element(rinf, x.first, x.second), *by);
        if (prod.empty()) return std::nullopt;
        TriDegree d = x.first + cx.ring().degree_of(by->begin()->first);
        auto cc = ss.coords(rinf, d, prod);
        if (!cc) {
            g.errors.push_back(what + " product of " + text(x) + " is not a permanent cycle");
            return std::nullopt;
        }
        if (ss.is_zero_class(rinf, d, *cc)) return std::nullopt;
        return Cls{d, reduced(ss, d, *cc)};
    };
    auto hidden = [&](const Cls& x, const std::string& kind) -> std::optional<Cls> {
        std::vector<Int> v = reduced(ss, x.first, x.second);
        std::optional<Cls> hit;
        for (const auto& h : ext)
            if (h.kind == kind && h.source_deg == x.first && h.source_coords == v) {
                if (hit && (hit->first != h.target_deg || hit->second != h.target_coords))
                    g.errors.push_back("conflicting " + kind + " extensions on " + text(x));
                hit = Cls{h.target_deg, h.target_coords};
            }
        return hit;
    };
    auto column_vec = [&](const std::optional<Cls>& v, std::vector<Int>& row, int sign) {
        if (!v) return;
        if (v->first.s != s || v->first.w != w) {
            g.errors.push_back("extension leaves the column: " + text(v));
            return;
        }
        for (std::size_t i = 0; i < v->second.size(); ++i) {
            auto it = col.find({v->first, i});
            if (it == col.end()) {
                if (v->second[i] != 0) g.truncated = true;
                continue;
            }
            row[it->second] += sign * v->second[i];
        }
    };

    std::vector<std::vector<Int>> rel;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& x = g.classes[k];
        if (x.order == 0) continue;
        const DegPage* p = ss.at(rinf, x.d);
        std::vector<Int> yv(p->summ.size());
        yv[x.idx] = x.order / 2;
        Cls y{x.d, yv};
        auto hy = hidden(y, "h");
        auto ey = page_product(y, h1, "h1");
        bool ey_hidden = false;
        if (!ey) {
            ey = hidden(y, "eta");
            ey_hidden = ey.has_value();
        }
        std::optional<Cls> rey;
        bool rey_hidden = false;
        if (ey) {
            rey = page_product(*ey, rho, "rho");
            if (!rey) {
                rey = hidden(*ey, "rho");
                rey_hidden = rey.has_value();
            }
        }
        std::vector<Int> row(n);
        row[k] = x.order;
        column_vec(hy, row, -1);
        column_vec(rey, row, -1);
        rel.push_back(row);
        std::string ylab = text(y);
        g.actions.push_back("h · " + ylab + " = " + text(hy) + (hy ? " (hidden)" : ""));
        g.actions.push_back("η · " + ylab + " = " + text(ey) + (ey_hidden ? " (hidden)" : ""));
        if (ey) g.actions.push_back("ρ · " + text(ey) + " = " + text(rey) + (rey_hidden ? " (hidden)" : ""));
        g.actions.push_back(x.order.str() + " · " + x.label + " = " + text(hy) + " + " + text(rey));
    }

    if (n == 0) return g;
    IntMatrix R(std::max<std::size_t>(rel.size(), 1), n);
    for (std::size_t i = 0; i < rel.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) R(i, j) = rel[i][j];
    SmithForm sf = smith_normal_form(R);
    IntMatrix Vinv = unimodular_inverse(sf.V);
    for (std::size_t i = 0; i < n; ++i) {
        Int d = i < R.rows() && i < n ? sf.D(i, i) : Int(0);
        if (d < 0) d = -d;
        if (d == 1) continue;
        // the generator is row i of V^{-1}, written lowest filtration first
        std::string name;
        int sign = 0;
        for (std::size_t j = 0; j < n; ++j) {
            Int cf = reduce_mod(Vinv(i, j), g.classes[j].order);
            Int o = g.classes[j].order;
            if (o != 0 && cf > o / 2) cf -= o;
            if (cf == 0) continue;
            if (sign == 0) sign = cf < 0 ? -1 : 1;
            cf *= sign;
            if (!name.empty()) name += cf < 0 ? " - " : " + ";
            if (cf < 0) cf = -cf;
            name += (cf == 1 ? "" : cf.str() + "·") + g.classes[j].label;
        }
        if (name.empty()) name = "0";
        g.group.summands.push_back({name, d});
    }
    std::stable_sort(g.group.summands.begin(), g.group.summands.end(), [](const auto& a, const auto& b) {
        if ((a.second == 0) != (b.second == 0)) return a.second == 0;
        return a.second > b.second;
    });
    return g;
}

PatternReport order_pattern_check(const SpectralSequence& ss, const std::vector<HiddenExtension>& ext, int j,
                                  int stem_lo, int stem_hi, int f_cap) {
    PatternReport rep;
    const int c = 4 * j - 1;
    const Int expected = Int(1) << (static_cast<unsigned>(v2(Int(j))) + 3);
    for (int s = stem_lo; s <= stem_hi; ++s) {
        HomotopyGroup g = assemble(ss, s, s - c, ext, f_cap);
        PatternRow row{c, s, ((s % 4) + 4) % 4 != 3, expected, g.exponent(), g.headline()};
        for (const auto& e : g.errors) rep.failures.push_back("stem " + std::to_string(s) + ": " + e);
        if (g.truncated) rep.failures.push_back("stem " + std::to_string(s) + ": column truncated at f = " + std::to_string(f_cap));
        if (row.generic && g.classes.empty()) continue;
        if (row.generic && row.found != expected)
            rep.failures.push_back("coweight " + std::to_string(c) + " stem " + std::to_string(s) + ": largest order " +
                                   row.found.str() + ", expected " + expected.str());
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace artifact
