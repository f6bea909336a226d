#include "artifact/chart.hpp"
#include "artifact/objects.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace artifact {

namespace {

struct Style {
    double pitch = 36, margin = 40, spread = 9;
    double circle_r = 4.5, box = 10;
    const char* grid = "#e0e0e0";
    const char* axis = "#404040";
    const char* black = "#000000";
    const char* green = "#1a9641";
    const char* red = "#d7191c";
    const char* d1 = "#8ec7f0";
    const char* hidden = "#08306b";
    const char* dash = "4,3";
};
const Style kStyle;

int mod(int a, int m) { return ((a % m) + m) % m; }

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", x);
    return buf;
}

Int element_order(const std::vector<Int>& v, const std::vector<Int>& orders) {
    Int out = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (orders[i] == 0) return 0;
        Int o = orders[i] / gcd_int(reduce_mod(v[i], orders[i]), orders[i]);
        out = out / gcd_int(out, o) * o;
    }
    return out;
}

class Builder {
public:
    Builder(const SpectralSequence& ss, const ChartSpec& spec) : ss_(ss), spec_(spec) {
        const auto& p = ss.complex().ring();
        r_ = spec.page == 0 ? ss.r_max() + 1 : spec.page;
        std::optional<std::size_t> tau;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const auto& d = p.generators()[i].degree;
            if (d.s == 0 && d.f == 0 && d.w < 0 && spec.modulus % (-d.w) == 0) {
                tau = i;
                break;
            }
        }
        if (!tau) throw std::invalid_argument(p.name() + " has no tau power of weight " + std::to_string(spec.modulus));
        tau_ = p.monomial_element(p.gen(p.generators()[*tau].name, spec.modulus / -p.generators()[*tau].degree.w));
    }

    struct Coker {
        std::vector<Int> orders;  // of E_r(d)
        IntMatrix T;              // tau^P from d + (0,0,P)
        Homology h;
    };

    const Coker& coker(const TriDegree& d) {
        auto it = cache_.find(d);
        if (it != cache_.end()) return it->second;
        Coker c;
        const DegPage* p = ss_.at(r_, d);
        if (p)
            for (const auto& x : p->summ) c.orders.push_back(x.order);
        TriDegree up{d.s, d.f, d.w + spec_.modulus};
        const DegPage* q = ss_.at(r_, up);
        std::size_t k = q ? q->summ.size() : 0;
        c.T = IntMatrix(c.orders.size(), k);
        for (std::size_t j = 0; j < k && p; ++j) {
            std::vector<Int> e(k);
            e[j] = 1;
            auto img = times_tau(up, e);
            for (std::size_t i = 0; i < img.size(); ++i) c.T(i, j) = img[i];
        }
        c.h = homology(c.orders, c.T, IntMatrix(0, c.orders.size()), {});
        return cache_.emplace(d, std::move(c)).first->second;
    }

    // tau^P times a class at d, as coordinates at d - (0,0,P)
    std::vector<Int> times_tau(const TriDegree& d, const std::vector<Int>& v) {
        TriDegree down{d.s, d.f, d.w - spec_.modulus};
        const DegPage* p = ss_.at(r_, down);
        std::vector<Int> zero(p ? p->summ.size() : 0);
        if (!p) return zero;
        Element prod = ss_.complex().multiply(ss_.lift_element(r_, d, v), tau_);
        if (prod.empty()) return zero;
        auto c = ss_.coords(r_, down, prod);
        if (!c) throw std::logic_error("tau multiple of a class at " + d.str() + " is not a cycle");
        return *c;
    }

    bool nonzero(const TriDegree& d, const std::vector<Int>& v) {
        const DegPage* p = ss_.at(r_, d);
        if (!p) return false;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (reduce_mod(v[i], p->summ[i].order) != 0) return true;
        return false;
    }

    struct Hit {
        TriDegree d;
        std::size_t gen;
        bool dashed;
    };

    // which chart generators a class is made of, following tau^P divisibility upward
    std::vector<Hit> locate(TriDegree d, std::vector<Int> v) {
        bool dashed = false;
        for (int guard = 0; guard < 64; ++guard) {
            const Coker& c = coker(d);
            const std::size_t n = c.orders.size(), g = c.h.orders.size(), k = c.T.cols();
            IntMatrix A(n, g + k + n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < g; ++j) A(i, j) = c.h.lifts(i, j);
                for (std::size_t j = 0; j < k; ++j) A(i, g + j) = c.T(i, j);
                A(i, g + k + i) = c.orders[i];
            }
            auto x = solve_integral(A, v);
            if (!x) throw std::logic_error("class at " + d.str() + " is outside E_r");
            std::vector<Hit> hits;
            for (std::size_t j = 0; j < g; ++j)
                if (reduce_mod((*x)[j], c.h.orders[j]) != 0) hits.push_back({d, j, dashed});
            if (!hits.empty()) return hits;
            std::vector<Int> b(x->begin() + g, x->begin() + g + k);
            d.w += spec_.modulus;
            if (!nonzero(d, b)) return {};
            v = b;
            dashed = true;
        }
        return {};
    }

    const SpectralSequence& ss_;
    const ChartSpec& spec_;
    int r_;
    Element tau_;
    std::map<TriDegree, Coker> cache_;
};

}  // namespace

void ChartSpec::validate() const {
    if (modulus < 1 || (modulus & (modulus - 1)) != 0) throw std::invalid_argument("modulus must be a power of 2");
    if (residue < 0 || residue >= modulus) throw std::invalid_argument("residue must lie in [0, modulus)");
    if (stem_lo > stem_hi) throw std::invalid_argument("empty stem range");
    if (f_cap < 0) throw std::invalid_argument("negative filtration cap");
    if (page < 0) throw std::invalid_argument("negative page");
}

std::vector<ChartDatum> chart_data(const SpectralSequence& ss, const ChartSpec& spec,
                                   const std::vector<HiddenExtension>& ext) {
    spec.validate();
    const E1Complex& cx = ss.complex();
    if (!cx.tri_graded()) throw std::invalid_argument(cx.name() + " is not tri-graded");
    Builder b(ss, spec);
    const Window& win = ss.inner();

    struct Rep {
        TriDegree d;
        std::size_t gen;
        std::vector<Int> v;
    };
    std::vector<Rep> reps;
    for (int s = spec.stem_lo; s <= spec.stem_hi; ++s)
        for (int w = win.hi.w; w >= win.lo.w; --w) {
            if (mod(s - w, spec.modulus) != spec.residue) continue;
            for (int f = 0; f <= spec.f_cap; ++f) {
                TriDegree d{s, f, w};
                const auto& c = b.coker(d);
                for (std::size_t j = 0; j < c.h.orders.size(); ++j) reps.push_back({d, j, c.h.lifts.column(j)});
            }
        }
    std::stable_sort(reps.begin(), reps.end(), [](const Rep& x, const Rep& y) {
        if (x.d.s != y.d.s) return x.d.s < y.d.s;
        if (x.d.f != y.d.f) return x.d.f < y.d.f;
        return x.d.w > y.d.w;
    });

    std::map<std::pair<TriDegree, std::size_t>, std::size_t> id;
    std::vector<ChartDatum> data;
    std::map<std::pair<int, int>, int> at_pos;
    std::vector<int> kpos;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        id[{reps[i].d, reps[i].gen}] = i;
        kpos.push_back(at_pos[{reps[i].d.s, reps[i].d.f}]++);
    }
    auto target = [&](const std::string& kind, const TriDegree& d, const std::vector<Int>& v) {
        std::vector<ChartLine> out;
        if (d.f > spec.f_cap || d.s < spec.stem_lo || d.s > spec.stem_hi) {
            out.push_back({kind, 0, 0, 0, false, true});
            return out;
        }
        for (const auto& h : b.locate(d, v)) {
            auto it = id.find({h.d, h.gen});
            if (it == id.end()) {
                out.push_back({kind, 0, 0, 0, h.dashed, true});
                continue;
            }
            out.push_back({kind, reps[it->second].d.s, reps[it->second].d.f, kpos[it->second], h.dashed, false});
        }
        return out;
    };

    const int r = b.r_;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const Rep& x = reps[i];
        const DegPage* p = ss.at(r, x.d);
        std::vector<Int> orders;
        for (const auto& sm : p->summ) orders.push_back(sm.order);
        ChartDatum dt;
        dt.s = x.d.s;
        dt.f = x.d.f;
        Int o = element_order(x.v, orders);
        if (o == 0) dt.glyph = "box";
        else if (o == 2) dt.glyph = "circle";
        else dt.glyph = "box:" + std::to_string(v2(o));
        Element lift = ss.lift_element(r, x.d, x.v);
        bool unit = std::count_if(x.v.begin(), x.v.end(), [](const Int& a) { return a != 0; }) == 1;
        dt.label = cx.label(lift);
        if (unit)
            for (std::size_t k = 0; k < x.v.size(); ++k)
                if (x.v[k] == 1) dt.label = p->summ[k].label;
        bool iota = p->summ.size() > 0;
        for (std::size_t k = 0; k < x.v.size(); ++k)
            if (x.v[k] != 0 && !p->summ[k].iota) iota = false;
        auto t1 = b.times_tau(x.d, x.v);
        bool periodic = b.nonzero({x.d.s, x.d.f, x.d.w - spec.modulus}, t1);
        if (periodic) {
            TriDegree d1{x.d.s, x.d.f, x.d.w - spec.modulus};
            periodic = b.nonzero({x.d.s, x.d.f, x.d.w - 2 * spec.modulus}, b.times_tau(d1, t1));
        }
        dt.color = !periodic ? "red" : iota ? "green" : "black";

        if (spec.products)
            for (const char* g : {"h1", "rho"}) {
                if (!cx.ring().has(g)) continue;
                Element by = cx.ring().monomial_element(cx.ring().gen(g));
                Element prod = cx.multiply(lift, by);
                if (prod.empty()) continue;
                TriDegree d = x.d + cx.ring().degree_of(cx.ring().gen(g));
                auto c = ss.coords(r, d, prod);
                if (!c) throw std::logic_error(std::string(g) + " multiple of " + dt.label + " is not a cycle");
                if (!b.nonzero(d, *c)) continue;
                auto ls = target(g, d, *c);
                dt.lines.insert(dt.lines.end(), ls.begin(), ls.end());
            }
        if (spec.differentials && spec.page != 0 && spec.modulus == 1 && r <= ss.r_max()) {
            const IntMatrix& dm = ss.diff(r, x.d);
            if (dm.rows()) {
                std::vector<Int> y = mat_vec(dm, x.v);
                TriDegree d = x.d + cx.shift(r);
                if (b.nonzero(d, y)) {
                    auto ls = target("d" + std::to_string(r), d, y);
                    dt.lines.insert(dt.lines.end(), ls.begin(), ls.end());
                }
            }
        }
        data.push_back(std::move(dt));
    }

    if (spec.hidden && spec.page == 0)
        for (const auto& h : ext) {
            if (mod(h.source_deg.coweight(), spec.modulus) != spec.residue) continue;
            if (h.source_deg.f > spec.f_cap || h.source_deg.s < spec.stem_lo || h.source_deg.s > spec.stem_hi) continue;
            auto src = b.locate(h.source_deg, h.source_coords);
            // tau multiples of a drawn extension are implied by periodicity
            if (src.size() != 1 || src[0].dashed) continue;
            auto it = id.find({src[0].d, src[0].gen});
            if (it == id.end()) continue;
            auto ls = target("hidden-" + h.kind, h.target_deg, h.target_coords);
            auto& lines = data[it->second].lines;
            lines.insert(lines.end(), ls.begin(), ls.end());
        }
    for (auto& d : data) std::sort(d.lines.begin(), d.lines.end());
    for (auto& d : data) d.lines.erase(std::unique(d.lines.begin(), d.lines.end()), d.lines.end());
    return data;
}

std::string emit_svg(const std::vector<ChartDatum>& data, const ChartSpec& spec) {
    const Style& st = kStyle;
    const int ns = spec.stem_hi - spec.stem_lo;
    const double width = 2 * st.margin + ns * st.pitch, height = 2 * st.margin + spec.f_cap * st.pitch;
    std::map<std::pair<int, int>, int> count;
    for (const auto& d : data) ++count[{d.s, d.f}];
    auto x_of = [&](int s, int f, int k) {
        int n = count.count({s, f}) ? count.at({s, f}) : 1;
        return st.margin + (s - spec.stem_lo) * st.pitch + (k - (n - 1) / 2.0) * st.spread;
    };
    auto y_of = [&](int f) { return height - st.margin - f * st.pitch; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    o << "<title>" << spec.object << " " << (spec.page == 0 ? std::string("E_inf") : "E_" + std::to_string(spec.page))
      << " coweight " << spec.residue << " mod " << spec.modulus << "</title>\n";
    o << "<g stroke=\"" << st.grid << "\" stroke-width=\"0.5\">\n";
    for (int s = 0; s <= ns; ++s)
        o << "<line x1=\"" << num(st.margin + s * st.pitch) << "\" y1=\"" << num(st.margin) << "\" x2=\""
          << num(st.margin + s * st.pitch) << "\" y2=\"" << num(height - st.margin) << "\"/>\n";
    for (int f = 0; f <= spec.f_cap; ++f)
        o << "<line x1=\"" << num(st.margin) << "\" y1=\"" << num(y_of(f)) << "\" x2=\"" << num(width - st.margin)
          << "\" y2=\"" << num(y_of(f)) << "\"/>\n";
    o << "</g>\n<g font-family=\"sans-serif\" font-size=\"9\" fill=\"" << st.axis << "\" text-anchor=\"middle\">\n";
    for (int s = spec.stem_lo; s <= spec.stem_hi; ++s)
        if (mod(s, 4) == 0)
            o << "<text x=\"" << num(st.margin + (s - spec.stem_lo) * st.pitch) << "\" y=\""
              << num(height - st.margin + 14) << "\">" << s << "</text>\n";
    for (int f = 0; f <= spec.f_cap; f += 2)
        o << "<text x=\"" << num(st.margin - 14) << "\" y=\"" << num(y_of(f) + 3) << "\">" << f << "</text>\n";
    o << "</g>\n";

    std::map<std::pair<int, int>, int> seen;
    std::vector<int> kk;
    for (const auto& d : data) kk.push_back(seen[{d.s, d.f}]++);
    auto color = [&](const std::string& c) { return c == "green" ? st.green : c == "red" ? st.red : st.black; };

    o << "<g fill=\"none\" stroke-width=\"1\">\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& d = data[i];
        double x0 = x_of(d.s, d.f, kk[i]), y0 = y_of(d.f);
        for (const auto& l : d.lines) {
            const char* stroke = st.black;
            if (l.kind.rfind("hidden", 0) == 0) stroke = st.hidden;
            else if (l.kind[0] == 'd') stroke = st.d1;
            else stroke = color(d.color);
            double x1, y1;
            if (l.arrow) {
                double dx = l.kind == "rho" ? -1 : 1;
                x1 = x0 + dx * st.pitch * 0.6;
                y1 = y0 - st.pitch * 0.6;
            } else {
                x1 = x_of(l.s, l.f, l.k);
                y1 = y_of(l.f);
            }
            o << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y1)
              << "\" stroke=\"" << stroke << "\"";
            if (l.dashed) o << " stroke-dasharray=\"" << st.dash << "\"";
            if (l.arrow) o << " marker-end=\"url(#arrow)\"";
            o << "/>\n";
        }
    }
    o << "</g>\n";
    o << "<defs><marker id=\"arrow\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\" fill=\""
      << st.axis << "\"/></marker></defs>\n";
    o << "<g font-family=\"sans-serif\" font-size=\"7\" text-anchor=\"middle\">\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& d = data[i];
        double x = x_of(d.s, d.f, kk[i]), y = y_of(d.f);
        const char* c = color(d.color);
        if (d.glyph == "circle") {
            o << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(st.circle_r) << "\" fill=\"" << c
              << "\"><title>" << d.label << "</title></circle>\n";
        } else {
            o << "<rect x=\"" << num(x - st.box / 2) << "\" y=\"" << num(y - st.box / 2) << "\" width=\"" << num(st.box)
              << "\" height=\"" << num(st.box) << "\" fill=\"white\" stroke=\"" << c << "\"><title>" << d.label
              << "</title></rect>\n";
            if (d.glyph.size() > 4)
                o << "<text x=\"" << num(x) << "\" y=\"" << num(y + 2.5) << "\" fill=\"" << c << "\">" << d.glyph.substr(4)
                  << "</text>\n";
        }
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

std::string write_sidecar(const std::vector<ChartDatum>& data, const ChartSpec& spec) {
    std::ostringstream o;
    o << "# " << spec.object << " page " << (spec.page == 0 ? std::string("inf") : std::to_string(spec.page))
      << " coweight " << spec.residue << " mod " << spec.modulus << " stems " << spec.stem_lo << ".." << spec.stem_hi
      << " f<=" << spec.f_cap << "\n";
    for (const auto& d : data) {
        o << d.s << '\t' << d.f << '\t' << d.glyph << '\t' << d.color << '\t' << d.label << '\t';
        if (d.lines.empty()) o << '-';
        for (std::size_t i = 0; i < d.lines.size(); ++i) {
            const auto& l = d.lines[i];
            if (i) o << ' ';
            o << l.kind << '@';
            if (l.arrow) o << '>';
            else o << l.s << ',' << l.f << ',' << l.k;
            if (l.dashed) o << '~';
        }
        o << '\n';
    }
    return o.str();
}

std::vector<ChartDatum> parse_sidecar(const std::string& text) {
    std::vector<ChartDatum> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f;
        std::string cur;
        for (char ch : line) {
            if (ch == '\t') {
                f.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        f.push_back(cur);
        if (f.size() != 6) throw std::runtime_error("chart data line needs 6 fields: " + line);
        ChartDatum d;
        d.s = std::stoi(f[0]);
        d.f = std::stoi(f[1]);
        d.glyph = f[2];
        d.color = f[3];
        d.label = f[4];
        if (f[5] != "-") {
            std::istringstream ls(f[5]);
            std::string tok;
            while (ls >> tok) {
                ChartLine l;
                auto at = tok.find('@');
                if (at == std::string::npos) throw std::runtime_error("bad line token " + tok);
                l.kind = tok.substr(0, at);
                std::string rest = tok.substr(at + 1);
                if (!rest.empty() && rest.back() == '~') {
                    l.dashed = true;
                    rest.pop_back();
                }
                if (rest == ">") {
                    l.arrow = true;
                } else {
                    char c1, c2;
                    std::istringstream rs(rest);
                    if (!(rs >> l.s >> c1 >> l.f >> c2 >> l.k) || c1 != ',' || c2 != ',')
                        throw std::runtime_error("bad line token " + tok);
                }
                d.lines.push_back(l);
            }
        }
        out.push_back(std::move(d));
    }
    return out;
}

RenderedChart render_chart(const ChartSpec& spec) {
    spec.validate();
    Window w = default_window(spec.object);
    w.lo.s = std::min(w.lo.s, spec.stem_lo);
    w.hi.s = std::max(w.hi.s, spec.stem_hi);
    w.hi.f = std::max(w.hi.f, spec.f_cap + 2);
    auto cx = make_complex(spec.object);
    auto rule = make_rule(*cx);
    SpectralSequence ss(*cx, w, default_pages(spec.object), rule);
    RenderedChart out;
    auto ex = expand_ledger(ledger_for(spec.object), ss, w);
    out.ledger_errors = ex.errors;
    out.data = chart_data(ss, spec, ex.ext);
    out.svg = emit_svg(out.data, spec);
    out.sidecar = write_sidecar(out.data, spec);
    return out;
}

std::string chart_basename(const ChartSpec& spec) {
    return spec.object + "-" + (spec.page == 0 ? std::string("inf") : std::to_string(spec.page)) + "-" +
           std::to_string(spec.residue) + "mod" + std::to_string(spec.modulus);
}

}  // namespace artifact
