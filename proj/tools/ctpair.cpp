// ctpair: Cassels-Tate pairing engine for genus-2 Jacobians with fully
// rational 2-torsion.
//
// Subcommands:
//   pair         evaluate <epsilon, eta> with per-place breakdown
//   matrix       full pairing matrix on a list of Selmer generators
//   delta        descent image of an explicit rational divisor
//   obstruction  Brauer obstruction of a single class
//   model        dump the Kummer model data (quartic, node matrices, ...)
//   twist        dump the twist data attached to one class
//
// Exit codes: 0 success, 2 invalid input, 3 no certified local point.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctpair/delta.hpp"
#include "ctpair/io.hpp"
#include "ctpair/kummer.hpp"

using nlohmann::json;
using namespace ctp;

namespace {

struct CurveOpt {
    std::string path;
    GenusTwoCurve load() const { return curve_from_json(load_json_file(path)); }
};

void add_curve_option(CLI::App* cmd, CurveOpt& opt) {
    cmd->add_option("--curve", opt.path, "curve JSON file ({\"leading\", \"roots\"})")
        ->required();
}

json quartic_coeffs_json(const std::array<Int, kQuarticTerms>& c) {
    json j = json::object();
    const auto& mono = quartic_monomials();
    for (size_t m = 0; m < kQuarticTerms; ++m) {
        if (c[m] == 0) continue;
        std::string key;
        for (int e : mono[m]) key += static_cast<char>('0' + e);
        j[key] = c[m].str();
    }
    return j;
}

int run_model(const CurveOpt& curve_opt, bool p15) {
    if (p15) {
        std::cerr << "ctpair: the 16-coordinate model is not implemented yet\n";
        return 1;
    }
    GenusTwoCurve C = curve_opt.load();
    std::mt19937_64 rng(1);
    KummerModel model = KummerModel::derive(C, rng);
    json out;
    out["quartic"] = quartic_coeffs_json(model.G.c);
    out["translations"] = json::array();
    for (const auto& [mask, TM] : model.M) {
        auto [i, j] = TM.T.indices();
        json entry;
        entry["indices"] = {i, j};
        json rows = json::array();
        for (int r = 0; r < 4; ++r) {
            json row = json::array();
            for (int s = 0; s < 4; ++s) row.push_back(numer(TM.M(r, s)).str());
            rows.push_back(row);
        }
        entry["matrix"] = rows;
        entry["c"] = TM.c.str();
        out["translations"].push_back(entry);
    }
    out["doubling"] = json::array();
    for (int i = 0; i < 4; ++i) out["doubling"].push_back(quartic_coeffs_json(model.dbl.f[i]));
    std::cout << out.dump() << "\n";
    return 0;
}

int run_delta(const CurveOpt& curve_opt, const std::string& point) {
    GenusTwoCurve C = curve_opt.load();
    Div<Rat> D = divisor_from_string(C, point);
    auto img = delta_image(C, D);
    json out;
    out["delta"] = {img[0].str(), img[1].str(), img[2].str(), img[3].str()};
    std::cout << out.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cassels-Tate pairing on the 2-Selmer group of a genus-2 Jacobian"};
    app.require_subcommand(1);

    CurveOpt curve_opt;
    std::string epsilon_csv, eta_csv, selmer_path, point_str;
    std::string report_format = "json";
    unsigned padic_precision = 0;
    unsigned long long seed = 0;
    bool p15 = false;

    auto* pair_cmd = app.add_subcommand("pair", "pair two Selmer classes");
    add_curve_option(pair_cmd, curve_opt);
    pair_cmd->add_option("--epsilon", epsilon_csv, "first class a,b,c,d")->required();
    pair_cmd->add_option("--eta", eta_csv, "second class a,b,c,d")->required();
    pair_cmd->add_option("--report", report_format, "json or text");
    pair_cmd->add_option("--padic-precision", padic_precision, "starting p-adic precision");
    pair_cmd->add_option("--seed", seed, "RNG seed for local point search");

    auto* matrix_cmd = app.add_subcommand("matrix", "pairing matrix on Selmer generators");
    add_curve_option(matrix_cmd, curve_opt);
    matrix_cmd->add_option("--selmer", selmer_path, "selmer JSON file ({\"generators\"})")
        ->required();
    matrix_cmd->add_option("--report", report_format, "json or text");
    matrix_cmd->add_option("--seed", seed, "RNG seed for local point search");

    auto* delta_cmd = app.add_subcommand("delta", "descent image of a rational divisor");
    add_curve_option(delta_cmd, curve_opt);
    delta_cmd->add_option("--point", point_str, "Mumford divisor \"u(x);v(x)\"")->required();

    auto* obstruction_cmd = app.add_subcommand("obstruction", "Brauer obstruction of a class");
    add_curve_option(obstruction_cmd, curve_opt);
    obstruction_cmd->add_option("--epsilon", epsilon_csv, "class a,b,c,d")->required();

    auto* model_cmd = app.add_subcommand("model", "dump Kummer model data as JSON");
    add_curve_option(model_cmd, curve_opt);
    model_cmd->add_flag("--p15", p15, "include the 16-coordinate model");

    auto* twist_cmd = app.add_subcommand("twist", "dump twist data for a class");
    add_curve_option(twist_cmd, curve_opt);
    twist_cmd->add_option("--epsilon", epsilon_csv, "class a,b,c,d")->required();
    twist_cmd->add_option("--seed", seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (delta_cmd->parsed()) return run_delta(curve_opt, point_str);
        if (model_cmd->parsed()) return run_model(curve_opt, p15);
        if (pair_cmd->parsed() || matrix_cmd->parsed() || obstruction_cmd->parsed() ||
            twist_cmd->parsed()) {
            std::cerr << "ctpair: subcommand not implemented yet\n";
            return 1;
        }
    } catch (const InvalidInput& ex) {
        std::cerr << "ctpair: " << ex.what() << "\n";
        return 2;
    } catch (const NoLocalPoint& ex) {
        std::cerr << "ctpair: " << ex.what() << "\n";
        return 3;
    } catch (const Error& ex) {
        std::cerr << "ctpair: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
