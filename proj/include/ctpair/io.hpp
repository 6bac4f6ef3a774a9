// JSON input formats.
//
// Curve files:   {"leading": "-10", "roots": ["0", "-10", ...]}  (6 roots)
// Selmer files:  {"generators": [["-33", "1", "-1", "-11"], ...]}
// Numbers are strings so arbitrary precision survives the trip.
#pragma once

#include <array>
#include <cctype>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctpair/curve.hpp"
#include "ctpair/mumford.hpp"
#include "ctpair/squareclass.hpp"

namespace ctp {

inline std::string json_number_string(const nlohmann::json& v, const char* what) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw InvalidInput(std::string(what) + ": expected a string or integer");
}

inline GenusTwoCurve curve_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("leading") || !j.contains("roots"))
        throw InvalidInput("curve: need fields 'leading' and 'roots'");
    Rat lead = parse_rat(json_number_string(j["leading"], "leading"));
    const auto& rts = j["roots"];
    if (!rts.is_array() || rts.size() != 6)
        throw InvalidInput("curve: 'roots' must list exactly 6 values");
    std::array<Rat, 6> roots;
    for (size_t i = 0; i < 6; ++i) roots[i] = parse_rat(json_number_string(rts[i], "root"));
    return GenusTwoCurve(lead, roots);
}

// A Selmer-group element: square classes against the basis (P, Q, R, S).
using SelmerElement = std::array<Int, 4>;

inline SelmerElement selmer_element_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 4)
        throw InvalidInput("selmer element: expected an array of 4 values");
    SelmerElement e;
    for (size_t i = 0; i < 4; ++i) {
        Rat v = parse_rat(json_number_string(j[i], "selmer component"));
        if (v == 0) throw InvalidInput("selmer component must be nonzero");
        e[i] = squarefree_reduce(v);
    }
    return e;
}

inline std::vector<SelmerElement> selmer_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("generators"))
        throw InvalidInput("selmer: need field 'generators'");
    const auto& g = j["generators"];
    if (!g.is_array() || g.empty()) throw InvalidInput("selmer: empty generator list");
    std::vector<SelmerElement> out;
    for (const auto& e : g) out.push_back(selmer_element_from_json(e));
    return out;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw InvalidInput("bad JSON in " + path + ": " + ex.what());
    }
    return j;
}

// "a,b,c,d" -> square-class tuple.
inline SelmerElement selmer_element_from_csv(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4) throw InvalidInput("expected 4 comma-separated values: " + s);
    SelmerElement e;
    for (size_t i = 0; i < 4; ++i) {
        Rat v = parse_rat(parts[i]);
        if (v == 0) throw InvalidInput("selmer component must be nonzero");
        e[i] = squarefree_reduce(v);
    }
    return e;
}

// Univariate polynomial in x with rational coefficients, e.g.
// "x^2 - 25/4", "-3x + 1", "x^2+2*x+1".
inline Poly<Rat> parse_poly(const std::string& s) {
    Poly<Rat> out;
    size_t i = 0, n = s.size();
    auto skip_ws = [&] { while (i < n && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    auto parse_uint = [&]() -> std::string {
        size_t start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw InvalidInput("polynomial: expected digits in '" + s + "'");
        return s.substr(start, i - start);
    };
    skip_ws();
    bool first = true;
    while (i < n) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw InvalidInput("polynomial: expected '+' or '-' in '" + s + "'");
        }
        first = false;
        Rat coef(1);
        bool have_coef = false;
        if (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::string num = parse_uint();
            std::string den = "1";
            skip_ws();
            if (i < n && s[i] == '/') {
                ++i;
                skip_ws();
                den = parse_uint();
                skip_ws();
            }
            coef = parse_rat(num + "/" + den);
            have_coef = true;
            if (i < n && s[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        long exp = 0;
        if (i < n && s[i] == 'x') {
            ++i;
            skip_ws();
            exp = 1;
            if (i < n && s[i] == '^') {
                ++i;
                skip_ws();
                exp = std::stol(parse_uint());
                skip_ws();
            }
        } else if (!have_coef) {
            throw InvalidInput("polynomial: stray character in '" + s + "'");
        }
        if (exp > 64) throw InvalidInput("polynomial: degree too large");
        std::vector<Rat> mono(static_cast<size_t>(exp) + 1, Rat(0));
        mono.back() = sign * coef;
        out = out + Poly<Rat>(mono);
        skip_ws();
    }
    return out;
}

// "u(x);v(x)" -> affine Mumford divisor on the given curve, after checking
// the divisor equation v^2 = f mod u.
inline Div<Rat> divisor_from_string(const GenusTwoCurve& C, const std::string& s) {
    auto semi = s.find(';');
    if (semi == std::string::npos) throw InvalidInput("point: expected \"u(x);v(x)\"");
    Poly<Rat> u = parse_poly(s.substr(0, semi));
    Poly<Rat> v = parse_poly(s.substr(semi + 1));
    if (u.degree() < 0 || u.degree() > 2) throw InvalidInput("point: deg u must be 0, 1, or 2");
    u = u.monic();
    if (v.degree() >= u.degree() && u.degree() > 0) v = v % u;
    Div<Rat> D;
    D.u = u;
    D.v = v;
    long d = u.degree();
    D.winf_plus = d == 2 ? 0 : 1;
    D.winf_minus = d == 0 ? 1 : 0;
    if (d == 0) {
        if (!v.is_zero()) throw InvalidInput("point: v must be 0 when u is constant");
        return D;
    }
    Poly<Rat> rem = (v * v - C.fpoly()) % u;
    if (!rem.is_zero()) throw InvalidInput("point: v^2 != f mod u, not a divisor on this curve");
    return D;
}

}  // namespace ctp
