#include "artifact/acceptance.hpp"
#include "artifact/chart.hpp"
#include "artifact/objects.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace artifact;

namespace {

struct Range {
    int lo, hi;
};

// "a..b"; "inf" as the upper end maps to big
Range parse_range(const std::string& text, int big) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        int v = text == "inf" ? big : std::stoi(text);
        return {v, v};
    }
    std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    Range r{a == "inf" ? big : std::stoi(a), b == "inf" ? big : std::stoi(b)};
    if (r.lo > r.hi) throw std::invalid_argument("empty range " + text);
    return r;
}

std::string out_dir() {
    const char* env = std::getenv("ARTIFACT_OUT");
    return env ? env : ".";
}

void write_file(const std::string& path, const std::string& text) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream(path) << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"effective spectral sequences for ko, L and their relatives"};
    app.require_subcommand(1);

    std::string object;
    std::string pages = "1..inf", stems, weights, filtrations, out;
    auto* compute = app.add_subcommand("compute", "write a page dump");
    compute->add_option("--object", object)->required()->check(CLI::IsMember(object_names()));
    compute->add_option("--pages", pages, "page range, e.g. 1..inf");
    compute->add_option("--stems", stems);
    compute->add_option("--weights", weights);
    compute->add_option("--filtrations", filtrations);
    compute->add_option("--out", out, "output file; default ARTIFACT_OUT/<object>.pages.txt or stdout");

    ChartSpec spec;
    std::string chart_page = "inf", chart_stems = "0..24";
    bool no_diff = false, no_hidden = false, no_products = false;
    auto* chart = app.add_subcommand("chart", "write an SVG chart and its chart-data sidecar");
    chart->add_option("--object", spec.object)->required()->check(CLI::IsMember(object_names()));
    chart->add_option("--page", chart_page);
    chart->add_option("--residue", spec.residue);
    chart->add_option("--modulus", spec.modulus);
    chart->add_option("--stems", chart_stems);
    chart->add_option("--fcap", spec.f_cap);
    chart->add_flag("--no-differentials", no_diff);
    chart->add_flag("--no-hidden", no_hidden);
    chart->add_flag("--no-products", no_products);

    int stem = 0, weight = 0, fcap = 24;
    auto* query = app.add_subcommand("query", "assemble one homotopy group");
    query->add_option("--object", object)->required()->check(CLI::IsMember(object_names()));
    query->add_option("--stem", stem)->required();
    query->add_option("--weight", weight)->required();
    query->add_option("--fcap", fcap);

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--suite", suite, "one suite; default all")->check(CLI::IsMember(suite_names()));

    auto* dump = app.add_subcommand("dump-presentation", "print the normalized presentation");
    dump->add_option("--object", object)->required()->check(CLI::IsMember(object_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*compute) {
            Window w = default_window(object);
            int r_max = default_pages(object);
            Range pr = parse_range(pages, 1 << 20);
            if (!stems.empty()) {
                Range r = parse_range(stems, 0);
                w.lo.s = r.lo, w.hi.s = r.hi;
            }
            if (!weights.empty()) {
                Range r = parse_range(weights, 0);
                w.lo.w = r.lo, w.hi.w = r.hi;
            }
            if (!filtrations.empty()) {
                Range r = parse_range(filtrations, 0);
                w.lo.f = r.lo, w.hi.f = r.hi;
            }
            auto run = run_object(object, w, r_max);
            std::string text;
            for (int r = pr.lo; r <= std::min(pr.hi, r_max); ++r) text += run->dump(r, w);
            if (pr.hi > r_max) text += run->dump_einf(w);
            for (const auto& e : run->rule_errors()) text += "rule error: " + e + "\n";
            if (out.empty() && std::getenv("ARTIFACT_OUT")) out = out_dir() + "/" + object + ".pages.txt";
            if (out.empty()) {
                std::cout << text;
            } else {
                write_file(out, text);
                std::cout << out << "\n";
            }
            return 0;
        }
        if (*chart) {
            spec.page = chart_page == "inf" ? 0 : std::stoi(chart_page);
            Range sr = parse_range(chart_stems, 0);
            spec.stem_lo = sr.lo;
            spec.stem_hi = sr.hi;
            spec.differentials = !no_diff;
            spec.hidden = !no_hidden;
            spec.products = !no_products;
            try {
                spec.validate();
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
            RenderedChart rc = render_chart(spec);
            std::string base = out_dir() + "/" + chart_basename(spec);
            write_file(base + ".svg", rc.svg);
            write_file(base + ".txt", rc.sidecar);
            for (const auto& e : rc.ledger_errors) std::cerr << "ledger: " << e << "\n";
            std::cout << base << ".svg\n" << base << ".txt\n";
            return 0;
        }
        if (*query) {
            Window w{{stem - 1, 0, weight - 1}, {stem + 1, fcap, weight + 1}};
            auto cx = make_complex(object);
            auto rule = make_rule(*cx);
            SpectralSequence ss(*cx, w, default_pages(object), rule);
            auto ex = expand_ledger(ledger_for(object), ss, w);
            HomotopyGroup g = assemble(ss, stem, weight, ex.ext, fcap);
            std::cout << g.headline() << "\n";
            std::cout << "E_inf column of (" << stem << ", " << weight << "):\n";
            for (const auto& c : g.classes)
                std::cout << "  " << c.d.str() << "  " << (c.order == 0 ? "Z" : "Z/" + c.order.str()) << "  " << c.label
                          << "\n";
            if (!g.actions.empty()) std::cout << "actions:\n";
            for (const auto& a : g.actions) std::cout << "  " << a << "\n";
            std::cout << "provenance: " << g.provenance << (g.truncated ? "; column truncated at the filtration cap" : "")
                      << "\n";
            for (const auto& e : ex.errors) std::cout << "ledger error: " << e << "\n";
            for (const auto& e : g.errors) std::cout << "error: " << e << "\n";
            return g.errors.empty() && ex.errors.empty() ? 0 : 1;
        }
        if (*verify) {
            bool ok = true;
            for (const auto& r : run_acceptance(suite, std::cout)) ok = ok && r.pass;
            return ok ? 0 : 1;
        }
        if (*dump) {
            std::cout << load_presentation(object).to_json().dump(2) << "\n";
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
