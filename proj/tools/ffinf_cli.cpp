// Command-line front end. Exit codes: 0 success, 2 size limit, 3 contract
// violation, 4 parse error, 1 anything else.

#include "ffinf/ffinf.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace ffinf;

namespace {

struct Config {
    int order = 8;
    std::vector<long> ladder{64, 128, 256, 512};
    std::string format = "json";
    std::string cache_dir;
};

std::vector<long> parse_ladder(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t pos = 0;
            long v = std::stol(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad ladder entry: " + item);
        }
    }
    return out;
}

void validate(const Config& c) {
    if (c.order < 1 || c.order > 10) throw ContractError("truncation order must be in 1..10");
    for (std::size_t i = 1; i < c.ladder.size(); ++i)
        if (c.ladder[i] <= c.ladder[i - 1]) throw ContractError("ladder must be strictly increasing");
    if (c.format != "json" && c.format != "csv") throw ContractError("format must be json or csv");
}

// key=value lines; '#' starts a comment.
void load_config(const std::string& path, Config& c) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "order") {
            try {
                c.order = std::stoi(val);
            } catch (const std::exception&) {
                throw ParseError(path + ": bad order");
            }
        } else if (key == "ladder") c.ladder = parse_ladder(val);
        else if (key == "format") c.format = val;
        else if (key == "cache_dir") c.cache_dir = val;
        else throw ParseError(path + ":" + std::to_string(lineno) + ": unknown key " + key);
    }
}

void emit(const Json& j, const std::string& out) {
    if (out.empty()) std::cout << j.dump(2) << "\n";
    else io::write_file(out, j);
}

// A law given by name (semicircle, marchenko_pastur, bernoulli, dirac:a) or by a JSON file.
Law load_law(const std::string& src, int N) {
    if (src == "semicircle") return semicircle(N);
    if (src == "marchenko_pastur") return marchenko_pastur(N);
    if (src == "bernoulli") {
        MomentSeq m(N);
        for (int n = 1; n <= N; ++n) m[n - 1] = (n % 2) ? 0 : 1;
        return Law::from_moments(m);
    }
    if (src.rfind("dirac:", 0) == 0) return dirac(parse_scalar(src.substr(6)), N);
    Law l = law_from_json(io::read_file(src));
    if (l.order() < N) throw ContractError("law in " + src + " has order below " + std::to_string(N));
    return l.truncated(N);
}

Json run_enumerate(const std::string& kind, const std::vector<int>& args, bool distinct, bool list) {
    Json j;
    j["kind"] = kind;
    std::vector<std::string> items;
    auto need = [&](std::size_t k) {
        if (args.size() != k) throw ParseError(kind + " takes " + std::to_string(k) + " size argument(s)");
    };
    if (kind == "partitions") {
        need(1);
        for (const auto& p : enum_partitions(args[0])) items.push_back(p.str());
    } else if (kind == "nc") {
        need(1);
        for (const auto& p : enum_noncrossing(args[0])) items.push_back(p.str());
    } else if (kind == "annular") {
        need(2);
        for (const auto& p : enum_annular(args[0], args[1])) items.push_back(p.str());
    } else if (kind == "ci") {
        need(1);
        auto v = distinct ? distinct_cyclic_interval_partitions(args[0]) : enum_cyclic_intervals(args[0]);
        for (const auto& p : v) items.push_back(p.str());
    } else {
        throw ParseError("unknown enumeration kind: " + kind);
    }
    j["params"] = args;
    j["count"] = items.size();
    if (list) j["items"] = items;
    return j;
}

Json run_convolve(const std::string& op, const std::string& pf, const std::string& qf) {
    MonicPoly p = poly_from_json(io::read_file(pf));
    MonicPoly q = poly_from_json(io::read_file(qf));
    if (op == "add") return to_json(boxplus_d(p, q));
    if (op == "mul") return to_json(boxtimes_d(p, q));
    throw ParseError("op must be add or mul");
}

Json run_transform(const std::string& name, const std::string& input, int N, bool approx) {
    Json out;
    out["transform"] = name;
    auto is_poly_file = [&] {
        if (input.find(':') != std::string::npos || input == "semicircle" || input == "marchenko_pastur" ||
            input == "bernoulli")
            return false;
        Json j = io::read_file(input);
        return j.contains("atilde") || j.contains("roots") || j.contains("coeffs");
    };
    if ((name == "cumulants" || name == "moments") && is_poly_file()) {
        MonicPoly p = poly_from_json(io::read_file(input));
        int n = std::min<int>(N, p.degree());
        out["degree"] = p.degree();
        if (name == "cumulants") io::put(out, "finite_cumulants", finite_cumulants_from_coeffs(p, n), approx);
        else io::put(out, "moments", moments(p, N), approx);
        return out;
    }
    if (name == "rhat") {
        InfLaw l = [&] {
            if (input.find(':') == std::string::npos && input != "semicircle" && input != "marchenko_pastur" &&
                input != "bernoulli") {
                InfLaw f = inflaw_from_json(io::read_file(input));
                if (f.order() < N) throw ContractError("input order below " + std::to_string(N));
                return InfLaw::from_inf_moments(f.base().truncated(N),
                                                MomentSeq(f.inf_moments().begin(), f.inf_moments().begin() + N));
            }
            return InfLaw::from_inf_moments(load_law(input, N), MomentSeq(N, Scalar(0)));
        }();
        auto rhat = fluctuations_from_inf_moments(l.base(), l.inf_moments());
        auto viaseries = rhat_from_rinf(l.base(), l.inf_cumulants());
        if (rhat != viaseries) throw ConsistencyError("rhat routes disagree");
        out["law"] = to_json(l, approx);
        io::put(out, "rhat", rhat, approx);
        return out;
    }
    Law l = load_law(input, N);
    out["law"] = to_json(l, approx);
    if (name == "cumulants") io::put(out, "cumulants", l.cumulants(), approx);
    else if (name == "moments") io::put(out, "moments", l.moments(), approx);
    else if (name == "h") {
        auto h = h_coeffs_combinatorial(l.cumulants(), N);
        if (cauchy_moments(h_transform_analytic(l.cauchy()), N) != h)
            throw ConsistencyError("H routes disagree");
        io::put(out, "h", h, approx);
        out["series"] = to_json(h_series(h, N), approx);
    } else if (name == "k") out["series"] = to_json(l.k(), approx);
    else if (name == "mk") {
        Series m = markov_krein_inverse(l.cauchy());
        out["series"] = to_json(m, approx);
        io::put(out, "moments", cauchy_moments(m, N - 1), approx);
    } else if (name == "theta") out["series"] = to_json(theta(l.cauchy()), approx);
    else throw ParseError("unknown transform: " + name);
    return out;
}

std::string write_csv(const std::string& path, const std::string& csv) {
    if (path.empty()) return csv;
    std::ofstream f(path);
    if (!f) throw ContractError("cannot write " + path);
    f << csv;
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite free convolutions and their infinitesimal calculus, in exact arithmetic"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    bool approx = false;
    int order = 0;
    app.add_option("--config", config_path, "key=value configuration file (order, ladder, format, cache_dir)");
    app.add_flag("--approx", approx, "append decimal renderings to JSON output");
    app.add_option("--order,-N", order, "truncation order (default 8, at most 10)");

    auto* en = app.add_subcommand("enumerate", "enumerate partitions, nc, annular or ci");
    std::string kind;
    std::vector<int> sizes;
    bool distinct = false, count_only = false;
    en->add_option("kind", kind, "partitions | nc | annular | ci")->required();
    en->add_option("sizes", sizes, "n (or t s for annular)")->required();
    en->add_flag("--distinct", distinct, "ci: list distinct partitions instead of one per subset");
    en->add_flag("--count", count_only, "print only the count");

    auto* cv = app.add_subcommand("convolve", "finite free convolution of two polynomial files");
    std::string op, pfile, qfile, out;
    cv->add_option("--op", op, "add | mul")->required();
    cv->add_option("p", pfile)->required();
    cv->add_option("q", qfile)->required();
    cv->add_option("-o,--output", out, "output file (default stdout)");

    auto* tr = app.add_subcommand("transform", "cumulants | moments | h | k | mk | theta | rhat");
    std::string tname, input, tout;
    tr->add_option("name", tname)->required();
    tr->add_option("input", input, "JSON file, or semicircle | marchenko_pastur | bernoulli | dirac:a")->required();
    tr->add_option("-o,--output", tout);

    auto* gen = app.add_subcommand("generate", "write a family polynomial of given degree");
    std::string gfamily, gout;
    long gdeg = 0;
    gen->add_option("family", gfamily)->required();
    gen->add_option("degree", gdeg)->required();
    gen->add_option("-o,--output", gout);

    auto* inf = app.add_subcommand("infinitesimal", "degree-ladder extrapolation for a family");
    std::string family, ladder_str, format, json_out, csv_out;
    int nmoments = 0;
    bool cumulants = false;
    inf->add_option("--family", family, "family name, e.g. hermite or dirac_perturbation:0:2")->required();
    inf->add_option("--moments", nmoments, "largest index n")->required();
    inf->add_option("--ladder", ladder_str, "comma-separated increasing degrees");
    inf->add_flag("--cumulants", cumulants, "extrapolate finite free cumulants instead of moments");
    inf->add_option("--format", format, "csv | json for stdout");
    inf->add_option("--json-out", json_out, "also write the JSON reports here");
    inf->add_option("--csv-out", csv_out, "also write the CSV table here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }

    try {
        Config cfg;
        if (const char* env = std::getenv("FFINF_CACHE_DIR")) cfg.cache_dir = env;
        if (!config_path.empty()) load_config(config_path, cfg);
        if (order) cfg.order = order;
        if (!ladder_str.empty()) cfg.ladder = parse_ladder(ladder_str);
        if (!format.empty()) cfg.format = format;
        else if (*inf) cfg.format = "csv";
        validate(cfg);
        if (!cfg.cache_dir.empty()) set_annular_cache_dir(cfg.cache_dir);

        if (*en) {
            Json j = run_enumerate(kind, sizes, distinct, !count_only);
            if (count_only) std::cout << j["count"] << "\n";
            else emit(j, "");
        } else if (*cv) {
            emit(run_convolve(op, pfile, qfile), out);
        } else if (*tr) {
            emit(run_transform(tname, input, cfg.order, approx), tout);
        } else if (*gen) {
            emit(to_json(family_by_name(gfamily).generator(gdeg)), gout);
        } else if (*inf) {
            Family f = family_by_name(family);
            auto reps = extrapolate_family(f, nmoments, cfg.ladder,
                                           cumulants ? LadderQuantity::cumulants : LadderQuantity::moments);
            Json j;
            j["family"] = family;
            j["quantity"] = cumulants ? "cumulants" : "moments";
            j["reports"] = to_json(reps, approx);
            std::string csv = ladder_csv(reps);
            if (!json_out.empty()) io::write_file(json_out, j);
            if (!csv_out.empty()) write_csv(csv_out, csv);
            if (cfg.format == "csv") std::cout << csv;
            else std::cout << j.dump(2) << "\n";
        }
        return 0;
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
