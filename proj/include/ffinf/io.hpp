#pragma once

// JSON and CSV serialization. Rationals are "num/den" strings; decimal
// renderings are added under "<key>_approx" only when requested.

#include "families.hpp"

#include <json.hpp>  // vendored nlohmann/json

#include <fstream>
#include <iomanip>

namespace ffinf {

using Json = nlohmann::ordered_json;

namespace io {

inline Json scalars(const std::vector<Scalar>& v) { return Json(to_strings(v)); }

inline void put(Json& j, const std::string& key, const std::vector<Scalar>& v, bool approx) {
    j[key] = scalars(v);
    if (approx) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(to_double(x));
        j[key + "_approx"] = a;
    }
}

inline void put(Json& j, const std::string& key, const Scalar& x, bool approx) {
    j[key] = to_string(x);
    if (approx) j[key + "_approx"] = to_double(x);
}

inline std::vector<Scalar> get_scalars(const Json& j, const std::string& key) {
    if (!j.contains(key)) throw ParseError("missing field: " + key);
    const Json& a = j.at(key);
    if (!a.is_array()) throw ParseError("field must be an array: " + key);
    std::vector<Scalar> out;
    for (const auto& x : a) {
        if (x.is_string()) out.push_back(parse_scalar(x.get<std::string>()));
        else if (x.is_number_integer()) out.push_back(Scalar(x.get<long>()));
        else throw ParseError("entries of " + key + " must be rational strings or integers");
    }
    return out;
}

inline long get_long(const Json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) throw ParseError("missing integer field: " + key);
    return j.at(key).get<long>();
}

inline Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ContractError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace io

// {"degree": d, "atilde": [...]}; "roots" or ordinary "coeffs" (leading first) are accepted on input.
inline Json to_json(const MonicPoly& p) {
    Json j;
    j["degree"] = p.degree();
    j["atilde"] = io::scalars(p.atilde());
    return j;
}

inline MonicPoly poly_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("polynomial must be a JSON object");
    MonicPoly p = [&] {
        if (j.contains("atilde")) {
            auto a = io::get_scalars(j, "atilde");
            if (a.empty() || a[0] != 1) throw ParseError("atilde must start with 1");
            if (a.size() < 2) throw ParseError("polynomial degree must be at least 1");
            return MonicPoly(a);
        }
        if (j.contains("roots")) {
            auto r = io::get_scalars(j, "roots");
            if (r.empty()) throw ParseError("polynomial degree must be at least 1");
            return from_roots(r);
        }
        if (j.contains("coeffs")) {
            auto c = io::get_scalars(j, "coeffs");
            if (c.size() < 2 || c[0] != 1) throw ParseError("coeffs must be monic, leading coefficient first");
            return MonicPoly::from_ordinary(c);
        }
        throw ParseError("polynomial needs atilde, roots or coeffs");
    }();
    if (j.contains("degree") && io::get_long(j, "degree") != p.degree())
        throw ParseError("degree field does not match coefficients");
    return p;
}

inline Json to_json(const Law& l, bool approx = false) {
    Json j;
    j["order"] = l.order();
    io::put(j, "moments", l.moments(), approx);
    io::put(j, "cumulants", l.cumulants(), approx);
    return j;
}

// {"moments": [...]} or {"cumulants": [...]}; when both are present they must agree.
inline Law law_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("law must be a JSON object");
    if (j.contains("moments")) {
        Law l = Law::from_moments(io::get_scalars(j, "moments"));
        if (j.contains("cumulants") && io::get_scalars(j, "cumulants") != l.cumulants())
            throw ParseError("moments and cumulants disagree");
        return l;
    }
    if (j.contains("cumulants")) return Law::from_cumulants(io::get_scalars(j, "cumulants"));
    throw ParseError("law needs moments or cumulants");
}

inline Json to_json(const InfLaw& l, bool approx = false) {
    Json j;
    j["order"] = l.order();
    io::put(j, "moments", l.base().moments(), approx);
    io::put(j, "inf_moments", l.inf_moments(), approx);
    io::put(j, "cumulants", l.base().cumulants(), approx);
    io::put(j, "inf_cumulants", l.inf_cumulants(), approx);
    return j;
}

inline InfLaw inflaw_from_json(const Json& j) {
    Law base = law_from_json(j);
    if (j.contains("inf_moments")) {
        auto mp = io::get_scalars(j, "inf_moments");
        if (static_cast<int>(mp.size()) != base.order()) throw ParseError("inf_moments length differs from order");
        return InfLaw::from_inf_moments(base, mp);
    }
    if (j.contains("inf_cumulants")) {
        auto rp = io::get_scalars(j, "inf_cumulants");
        if (static_cast<int>(rp.size()) != base.order()) throw ParseError("inf_cumulants length differs from order");
        return InfLaw::from_inf_cumulants(base, rp);
    }
    return InfLaw::from_inf_moments(base, MomentSeq(base.order(), Scalar(0)));
}

inline Json to_json(const FluctLaw& f, bool approx = false) {
    Json j;
    j["order"] = f.order();
    io::put(j, "cumulants", f.base.cumulants(), approx);
    io::put(j, "rhat", f.rhat, approx);
    return j;
}

inline Json to_json(const Series& s, bool approx = false) {
    Json j;
    j["variable"] = s.var() == Variable::z ? "z" : "inverse_z";
    j["low"] = s.low();
    j["precision"] = s.precision();
    std::vector<Scalar> c;
    for (long k = s.low(); k <= s.high(); ++k) c.push_back(s.coeff(k));
    io::put(j, "coeffs", c, approx);
    return j;
}

inline Series series_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("variable")) throw ParseError("series needs a variable");
    std::string v = j.at("variable").get<std::string>();
    if (v != "z" && v != "inverse_z") throw ParseError("series variable must be z or inverse_z");
    return Series(v == "z" ? Variable::z : Variable::inverse_z, io::get_long(j, "low"), io::get_scalars(j, "coeffs"),
                  io::get_long(j, "precision"));
}

inline Json to_json(const LadderReport& r, bool approx = false) {
    Json j;
    j["n"] = r.n;
    Json lad = Json::array();
    for (const auto& [d, delta] : r.ladder) {
        Json e;
        e["d"] = d;
        io::put(e, "delta", delta, approx);
        lad.push_back(e);
    }
    j["ladder"] = lad;
    io::put(j, "richardson", r.richardson, approx);
    io::put(j, "estimate", r.estimate, approx);
    if (r.predicted) io::put(j, "predicted", *r.predicted, approx);
    else j["predicted"] = nullptr;
    if (r.abs_error) io::put(j, "abs_error", *r.abs_error, approx);
    else j["abs_error"] = nullptr;
    return j;
}

inline Json to_json(const std::vector<LadderReport>& reps, bool approx = false) {
    Json a = Json::array();
    for (const auto& r : reps) a.push_back(to_json(r, approx));
    return a;
}

// One row per rung; richardson and abs_error refer to the pair ending at that
// rung and are empty on the first rung.
inline std::string ladder_csv(const std::vector<LadderReport>& reps) {
    std::ostringstream out;
    out << "n,d,delta_exact,richardson,predicted,abs_error\n";
    for (const auto& r : reps) {
        for (std::size_t i = 0; i < r.ladder.size(); ++i) {
            out << r.n << ',' << r.ladder[i].first << ',' << to_string(r.ladder[i].second) << ',';
            if (i > 0) out << to_string(r.richardson[i - 1]);
            out << ',';
            if (r.predicted) out << to_string(*r.predicted);
            out << ',';
            if (i > 0 && r.predicted) out << to_string(abs(r.richardson[i - 1] - *r.predicted));
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace ffinf
