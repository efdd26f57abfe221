#pragma once

#include <valent/io.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace valent {

namespace detail {

inline std::vector<Rat> parse_rat_csv(const std::string& s) {
    std::vector<Rat> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        out.push_back(parse_rational(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

inline std::vector<long> parse_long_csv(const std::string& s) {
    std::vector<long> out;
    for (const Rat& r : parse_rat_csv(s)) out.push_back(to_long(r));
    return out;
}

/// "l1,l2:h1,h2" -> integer box bounds.
inline std::pair<std::vector<long>, std::vector<long>> parse_box(const std::string& s) {
    std::size_t colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("malformed box '" + s + "' (expected \"lo1,lo2,..:hi1,hi2,..\")");
    auto lo = parse_long_csv(s.substr(0, colon));
    auto hi = parse_long_csv(s.substr(colon + 1));
    if (lo.size() != hi.size()) throw std::invalid_argument("box bounds must have matching lengths");
    return {lo, hi};
}

inline EntropyMethod parse_method(const std::string& s) {
    if (s == "hnf") return EntropyMethod::Hnf;
    if (s == "minors") return EntropyMethod::Minors;
    if (s == "iterative") return EntropyMethod::Iterative;
    throw std::invalid_argument("unknown method '" + s + "' (expected hnf, minors or iterative)");
}

}  // namespace detail

/// Command surface. Arguments exclude the program name; JSON goes to `out`,
/// diagnostics to `err`. Exit status: 0 ok, 1 domain error, 2 usage error.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"entropy maps of lattices over non-archimedean valued fields"};
    app.name("valent");
    app.require_subcommand(1);

    std::string file, method = "hnf", v_csv, box_csv, given, csv_path, x1, x2, x12;
    long n = 0;
    int precision = 0, guard = 10, modexp = 0, ci_i = 0, ci_j = 0;
    std::uint64_t seed = 0;

    auto add_file = [&](CLI::App* cmd) { cmd->add_option("file", file, "lattice JSON file")->required(); };
    auto add_method = [&](CLI::App* cmd) {
        cmd->add_option("--method", method, "entropy method")->check(CLI::IsMember({"hnf", "minors", "iterative"}));
    };

    CLI::App* entropy_cmd = app.add_subcommand("entropy", "entropy vector of all coordinate subsets");
    add_file(entropy_cmd);
    add_method(entropy_cmd);
    entropy_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        out << entropy_to_json(entropy_vector(l, detail::parse_method(method))).dump() << "\n";
    });

    CLI::App* hnf_cmd = app.add_subcommand("hnf", "canonical Hermite representative");
    add_file(hnf_cmd);
    hnf_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        out << lattice_to_json(l.field(), hermite_normal_form(l)).dump() << "\n";
    });

    CLI::App* smith_cmd = app.add_subcommand("smith", "decomposition A = U D V with U, V unimodular");
    add_file(smith_cmd);
    smith_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        SmithDecomposition s = smith_decomposition(l.representative());
        Json j;
        j["field"] = field_to_json(l.field());
        j["U"] = matrix_to_json(s.u);
        j["D"] = matrix_to_json(s.d);
        j["V"] = matrix_to_json(s.v);
        out << j.dump() << "\n";
    });

    CLI::App* phi_cmd = app.add_subcommand("phi", "tropical tail polynomial evaluation");
    add_file(phi_cmd);
    add_method(phi_cmd);
    phi_cmd->add_option("--v", v_csv, "point, comma-joined rationals");
    phi_cmd->add_option("--box", box_csv, "integer box lo1,..:hi1,..");
    phi_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        TropicalPolynomial t = tropical_polynomial(l, detail::parse_method(method));
        Json j;
        if (!v_csv.empty()) {
            j["phi"] = phi_eval(t, detail::parse_rat_csv(v_csv)).get_str();
        } else if (!box_csv.empty()) {
            auto [lo, hi] = detail::parse_box(box_csv);
            std::vector<long> v = lo;
            while (true) {
                j[vector_key(v)] = phi_eval(t, v).get_str();
                int k = static_cast<int>(v.size()) - 1;
                while (k >= 0 && v[static_cast<std::size_t>(k)] == hi[static_cast<std::size_t>(k)]) {
                    v[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
                    --k;
                }
                if (k < 0) break;
                ++v[static_cast<std::size_t>(k)];
            }
        } else {
            throw std::invalid_argument("phi needs --v or --box");
        }
        out << j.dump() << "\n";
    });

    CLI::App* tail_cmd = app.add_subcommand("tail", "exact tail probability Q(v) = q^{-phi(v)}");
    add_file(tail_cmd);
    add_method(tail_cmd);
    tail_cmd->add_option("--v", v_csv, "point, comma-joined integers");
    tail_cmd->add_option("--box", box_csv, "integer box lo1,..:hi1,..");
    tail_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        TropicalPolynomial t = tropical_polynomial(l, detail::parse_method(method));
        Json j;
        if (!v_csv.empty()) {
            j["tail"] = tail_prob(t, detail::parse_rat_csv(v_csv)).get_str();
        } else if (!box_csv.empty()) {
            auto [lo, hi] = detail::parse_box(box_csv);
            std::vector<long> v = lo;
            while (true) {
                j[vector_key(v)] = tail_prob(t, v).get_str();
                int k = static_cast<int>(v.size()) - 1;
                while (k >= 0 && v[static_cast<std::size_t>(k)] == hi[static_cast<std::size_t>(k)]) {
                    v[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
                    --k;
                }
                if (k < 0) break;
                ++v[static_cast<std::size_t>(k)];
            }
        } else {
            throw std::invalid_argument("tail needs --v or --box");
        }
        out << j.dump() << "\n";
    });

    CLI::App* pmf_cmd = app.add_subcommand("pmf", "pointwise law of the valuation vector");
    add_file(pmf_cmd);
    add_method(pmf_cmd);
    pmf_cmd->add_option("--v", v_csv, "single point, comma-joined integers");
    pmf_cmd->add_option("--box", box_csv, "integer box lo1,..:hi1,..");
    pmf_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        TropicalPolynomial t = tropical_polynomial(l, detail::parse_method(method));
        Json j;
        if (!v_csv.empty()) {
            std::vector<long> v = detail::parse_long_csv(v_csv);
            j[vector_key(v)] = pmf_at(t, v).get_str();
        } else if (!box_csv.empty()) {
            auto [lo, hi] = detail::parse_box(box_csv);
            for (const auto& [v, prob] : pmf_box(t, lo, hi)) j[vector_key(v)] = prob.get_str();
        } else {
            throw std::invalid_argument("pmf needs --v or --box");
        }
        out << j.dump() << "\n";
    });

    CLI::App* super_cmd = app.add_subcommand("supermodular", "facet membership report for the entropy vector");
    add_file(super_cmd);
    add_method(super_cmd);
    super_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        SupermodularReport r =
            supermodular_membership(SetFunctionVector(entropy_vector(l, detail::parse_method(method))));
        out << supermodular_report_to_json(r).dump() << "\n";
    });

    CLI::App* ci_cmd = app.add_subcommand("ci", "conditional independence statement X_i _||_ X_j | X_I");
    add_file(ci_cmd);
    ci_cmd->add_option("--i", ci_i, "first index (1-based)")->required();
    ci_cmd->add_option("--j", ci_j, "second index (1-based)")->required();
    ci_cmd->add_option("--given", given, "conditioning subset, e.g. \"1,3\" (default empty)");
    ci_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        EntropyVector h = entropy_vector(l);
        bool holds = ci_statement(h, ci_i, ci_j, parse_subset_key(given, l.dim()));
        out << (holds ? "true" : "false") << "\n";
    });

    CLI::App* sample_cmd = app.add_subcommand("sample", "Monte-Carlo valuation histogram");
    add_file(sample_cmd);
    sample_cmd->add_option("--n", n, "sample count")->required();
    sample_cmd->add_option("--precision", precision, "digits N of the uniform draws")->required();
    sample_cmd->add_option("--seed", seed, "RNG seed")->required();
    sample_cmd->add_option("--guard", guard, "precision guard (default 10)");
    sample_cmd->add_option("--box", box_csv, "restrict the histogram to this box");
    sample_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        SampleBatch batch = sample_valuations(l, n, precision, seed, guard);
        std::map<std::vector<long>, long> counts;
        std::optional<std::pair<std::vector<long>, std::vector<long>>> window;
        if (!box_csv.empty()) window = detail::parse_box(box_csv);
        for (std::size_t s = 0; s < batch.valuations.size(); ++s) {
            if (batch.censored_flags[s]) continue;
            const auto& v = batch.valuations[s];
            if (window) {
                bool in = v.size() == window->first.size();
                for (std::size_t k = 0; in && k < v.size(); ++k)
                    in = window->first[k] <= v[k] && v[k] <= window->second[k];
                if (!in) continue;
            }
            ++counts[v];
        }
        Json j;
        j["n"] = batch.n;
        j["precision"] = batch.precision;
        j["seed"] = batch.seed;
        j["guard"] = batch.guard;
        j["censored"] = batch.censored;
        j["usable"] = batch.usable();
        Json hist;
        for (const auto& [v, c] : counts) hist[vector_key(v)] = c;
        j["counts"] = hist;
        out << j.dump() << "\n";
    });

    CLI::App* report_cmd = app.add_subcommand("report", "empirical vs exact tails over a box (JSON lines)");
    add_file(report_cmd);
    report_cmd->add_option("--n", n, "sample count")->required();
    report_cmd->add_option("--precision", precision, "digits N of the uniform draws")->required();
    report_cmd->add_option("--seed", seed, "RNG seed")->required();
    report_cmd->add_option("--box", box_csv, "integer box lo1,..:hi1,..")->required();
    report_cmd->add_option("--guard", guard, "precision guard (default 10)");
    report_cmd->add_option("--csv", csv_path, "also write rows to this CSV file");
    report_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        auto [lo, hi] = detail::parse_box(box_csv);
        SampleBatch batch = sample_valuations(l, n, precision, seed, guard);
        auto rows = empirical_tail_report(batch, tropical_polynomial(l), lo, hi);
        for (const auto& row : rows) out << tail_row_to_json(row).dump() << "\n";
        if (!csv_path.empty()) {
            std::ofstream csv(csv_path);
            if (!csv) throw std::invalid_argument("cannot open CSV output '" + csv_path + "'");
            for (std::size_t k = 0; k < lo.size(); ++k) csv << "v" << k + 1 << ",";
            csv << "empirical,exact,z\n";
            for (const auto& row : rows) {
                for (long x : row.v) csv << x << ",";
                csv << row.empirical << "," << row.exact.get_str() << ",";
                if (row.z) csv << *row.z;
                csv << "\n";
            }
        }
    });

    CLI::App* index_cmd = app.add_subcommand("index", "group index [L : L ∩ pi^v] by finite enumeration");
    add_file(index_cmd);
    index_cmd->add_option("--v", v_csv, "point, comma-joined nonnegative integers")->required();
    index_cmd->add_option("--modexp", modexp, "modulus exponent M (checked against M+1)")->required();
    index_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        Json j;
        j["index"] = brute_force_index(l, detail::parse_long_csv(v_csv), modexp).get_str();
        out << j.dump() << "\n";
    });

    CLI::App* d3fan_cmd = app.add_subcommand("d3fan", "project a d=3 entropy vector onto W and classify");
    add_file(d3fan_cmd);
    add_method(d3fan_cmd);
    d3fan_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        WPoint p = project_to_W(SetFunctionVector(entropy_vector(l, detail::parse_method(method))));
        FanReport fan = fan_P_membership(p);
        Json j;
        j["W"] = wpoint_to_json(p);
        j["in_C"] = cone_C_membership(p);
        j["in_P"] = fan.member;
        j["systems"] = fan.systems;
        out << j.dump() << "\n";
    });

    CLI::App* s2pre_cmd = app.add_subcommand("s2pre", "lattice realizing a given point of S_2 (puiseux)");
    s2pre_cmd->add_option("--x1", x1, "h_1 as a rational string")->required();
    s2pre_cmd->add_option("--x2", x2, "h_2 as a rational string")->required();
    s2pre_cmd->add_option("--x12", x12, "h_12 as a rational string")->required();
    s2pre_cmd->callback([&] {
        Lattice l = s2_preimage(parse_rational(x1), parse_rational(x2), parse_rational(x12));
        out << lattice_to_json(l.field(), l.representative()).dump() << "\n";
    });

    CLI::App* export_cmd = app.add_subcommand("export-tropical", "subset/coefficient dump for polytope tools");
    add_file(export_cmd);
    add_method(export_cmd);
    export_cmd->callback([&] {
        Lattice l = parse_lattice_file(file);
        out << export_tropical(entropy_vector(l, detail::parse_method(method)));
    });

    std::vector<const char*> argv;
    argv.push_back("valent");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace valent
