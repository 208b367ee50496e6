#include "qclt/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qclt/asymptotic.hpp"
#include "qclt/errors.hpp"
#include "qclt/gram.hpp"
#include "qclt/gram_io.hpp"
#include "qclt/oracle.hpp"
#include "qclt/photonstats.hpp"

namespace qclt::cli {
namespace {

using nlohmann::ordered_json;
using linalg::cd;
using linalg::ComplexMatrix;

constexpr std::size_t kExactPhotonCap = 7;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require(bool ok, const std::string& reason) {
    if (!ok) throw std::invalid_argument(reason);
}

std::string single_line(std::string text) {
    for (auto& ch : text)
        if (ch == '\n' || ch == '\r') ch = ' ';
    return text;
}

const char* method_name(photonstats::Method m) {
    switch (m) {
        case photonstats::Method::recursion: return "recursion";
        case photonstats::Method::closed_form: return "closed_form";
        case photonstats::Method::convolution: return "convolution";
        case photonstats::Method::quadrature: return "quadrature";
    }
    return "unknown";
}

bool x_is_set(const RunConfig& c) { return c.x >= 0.0; }

void validate(const RunConfig& c) {
    static const std::vector<std::string> kCommands{
        "gram", "asymptote", "pnd", "interp", "moments", "converge", "oracle"};
    require(std::find(kCommands.begin(), kCommands.end(), c.command) !=
                kCommands.end(),
            "unknown command '" + c.command + "'");
    require(c.format == "json" || c.format == "csv",
            "format must be json or csv");
    require(std::isfinite(c.eps) && c.eps > 0.0 && c.eps <= 1e-3,
            "eps must lie in (0, 1e-3]");
    require(c.m_max >= 1 && c.m_max <= 10000,
            "m-max must lie in [1, 10000]");
    require(std::isfinite(c.r) && c.r >= 0.0,
            "r must be a nonnegative real");
    require(!std::isnan(c.x), "interpolation weight must be a real number");
    if (x_is_set(c))
        require(c.x <= 1.0, "interpolation weight must lie in [0, 1]");
    for (int n : c.n_list) require(n >= 1, "source counts must be positive");

    if (c.command == "interp")
        require(x_is_set(c), "interp needs --interpolation-x");
    if (c.command == "converge") {
        require(!c.n_list.empty(), "converge needs --n with source counts");
        require(c.indistinguishable != x_is_set(c),
                "converge needs exactly one family: --indistinguishable or "
                "--interpolation-x");
        require(c.single_photon,
                "converge compares single-photon sources only");
        require(c.r == 1.0, "single-photon sources fix r = 1");
    }
}

gram::InternalFactor all_ones_factor(std::size_t n) {
    ComplexMatrix c(n, 1);
    for (std::size_t i = 0; i < n; ++i) c(i, 0) = cd{1.0, 0.0};
    return gram::InternalFactor{c};
}

gram::InternalFactor interpolation_factor(double x, std::size_t n) {
    return gram::factor_gram(
        gram::validate_gram(gram::interpolation_gram(x, n)));
}

// Overlap input resolved to a factor/spectrum. When the file carries the
// equal-overlap model in its limit form there is no finite factor; the
// commands that can use the limit spectrum pick it up from `limit`.
struct Overlap {
    std::optional<gram::InternalFactor> factor;
    std::optional<gram::InterpolationModel> limit;
};

Overlap resolve_overlap(const RunConfig& config, const std::string& input) {
    Overlap out;
    if (config.indistinguishable) {
        require(input.empty(),
                "give either an overlap file or --indistinguishable, not both");
        out.factor = all_ones_factor(2);
        return out;
    }
    require(!input.empty(),
            config.command +
                " needs an overlap file (--gram/--states) or "
                "--indistinguishable");
    const gram::GramInput parsed = gram::load_gram_input(input);
    if (parsed.gram) {
        out.factor = gram::factor_gram(*parsed.gram);
        return out;
    }
    require(parsed.interpolation.has_value(),
            "input file carries no overlap data");
    const auto& model = *parsed.interpolation;
    if (model.limit) {
        out.limit = model;
        return out;
    }
    out.factor = interpolation_factor(model.x, static_cast<std::size_t>(model.n));
    return out;
}

std::vector<double> overlap_spectrum(const Overlap& overlap) {
    if (overlap.factor) return gram::gamma_of(*overlap.factor).spectrum;
    return gram::interpolation_limit_spectrum(overlap.limit->x);
}

// ---- rendering ---------------------------------------------------------

ordered_json seed(const RunConfig& config) {
    ordered_json j;
    j["command"] = config.command;
    j["version"] = kVersion;
    return j;
}

std::string csv_distribution(const std::vector<double>& p, double tail) {
    std::string out = "m,p,tail_bound\n";
    for (std::size_t m = 0; m < p.size(); ++m) {
        out += std::to_string(m);
        out += ',';
        out += fmt17(p[m]);
        out += ',';
        if (m + 1 == p.size()) out += fmt17(tail);
        out += '\n';
    }
    return out;
}

std::string csv_spectrum(const std::vector<double>& lambda,
                         const std::vector<double>* beta) {
    std::string out = beta ? "u,lambda,beta_gibbs\n" : "u,lambda\n";
    for (std::size_t u = 0; u < lambda.size(); ++u) {
        out += std::to_string(u);
        out += ',';
        out += fmt17(lambda[u]);
        if (beta) {
            out += ',';
            out += fmt17((*beta)[u]);
        }
        out += '\n';
    }
    return out;
}

struct Document {
    ordered_json j;
    std::string csv;
};

// ---- command handlers --------------------------------------------------

Document run_gram(const RunConfig& config, const std::string& input) {
    const Overlap overlap = resolve_overlap(config, input);
    require(overlap.factor.has_value(),
            "gram needs a finite overlap, not the limit model");
    const auto gamma = gram::gamma_of(*overlap.factor);
    Document doc;
    doc.j = seed(config);
    doc.j["n"] = gamma.sources;
    doc.j["dim"] = overlap.factor->dim();
    doc.j["min_eigenvalue"] =
        gamma.spectrum.empty() ? 0.0 : gamma.spectrum.back();
    doc.j["lambda"] = gamma.spectrum;
    doc.csv = csv_spectrum(gamma.spectrum, nullptr);
    return doc;
}

Document run_asymptote(const RunConfig& config, const std::string& input) {
    const Overlap overlap = resolve_overlap(config, input);
    require(overlap.factor.has_value(),
            "asymptote needs a finite overlap, not the limit model");
    const auto gamma = gram::gamma_of(*overlap.factor);
    const auto state = asymptotic::build_asymptotic(
        gamma, asymptotic::InputMoments{config.r, cd{0.0, 0.0}});
    std::vector<double> lambda, beta;
    for (const auto& mode : state.gibbs) {
        lambda.push_back(mode.lambda);
        beta.push_back(mode.beta);
    }
    Document doc;
    doc.j = seed(config);
    doc.j["r"] = config.r;
    doc.j["lambda"] = lambda;
    doc.j["beta_gibbs"] = beta;
    doc.csv = csv_spectrum(lambda, &beta);
    return doc;
}

Document run_pnd(const RunConfig& config, const std::string& input) {
    const Overlap overlap = resolve_overlap(config, input);
    photonstats::PhotonNumberDistribution dist;
    if (overlap.factor) {
        const auto gamma = gram::gamma_of(*overlap.factor);
        dist = photonstats::pnd_recursive(gamma.spectrum, config.r,
                                          config.m_max, config.eps);
    } else {
        // Limit member of the equal-overlap family: its law is closed-form.
        dist = photonstats::pnd_interpolation(overlap.limit->x, config.m_max);
    }
    dist.validate();
    Document doc;
    doc.j = seed(config);
    doc.j["r"] = config.r;
    doc.j["method"] = method_name(dist.method);
    doc.j["p"] = dist.p;
    doc.j["tail_bound"] = dist.tail_bound;
    doc.csv = csv_distribution(dist.p, dist.tail_bound);
    return doc;
}

Document run_interp(const RunConfig& config, const std::string& input) {
    require(input.empty(), "interp takes no overlap file");
    const auto dist = photonstats::pnd_interpolation(config.x, config.m_max);
    dist.validate();
    Document doc;
    doc.j = seed(config);
    doc.j["x"] = config.x;
    doc.j["method"] = method_name(dist.method);
    doc.j["p"] = dist.p;
    doc.j["tail_bound"] = dist.tail_bound;
    doc.csv = csv_distribution(dist.p, dist.tail_bound);
    return doc;
}

Document run_moments(const RunConfig& config, const std::string& input) {
    const Overlap overlap = resolve_overlap(config, input);
    const auto m = photonstats::moments_of(overlap_spectrum(overlap), config.r);
    Document doc;
    doc.j = seed(config);
    doc.j["r"] = config.r;
    doc.j["mean"] = m.mean;
    doc.j["variance"] = m.variance;
    doc.j["purity"] = m.purity;
    doc.csv = "mean,variance,purity\n" + fmt17(m.mean) + "," +
              fmt17(m.variance) + "," + fmt17(m.purity) + "\n";
    return doc;
}

Document run_oracle(const RunConfig& config, const std::string& input) {
    gram::InternalFactor factor{ComplexMatrix(0, 0)};
    if (config.indistinguishable || x_is_set(config)) {
        require(input.empty(),
                "give either an overlap file or a family flag, not both");
        require(config.n_list.size() == 1,
                "oracle needs exactly one --n count with a family flag");
        const auto n = static_cast<std::size_t>(config.n_list.front());
        factor = config.indistinguishable ? all_ones_factor(n)
                                          : interpolation_factor(config.x, n);
    } else {
        require(!input.empty(),
                "oracle needs an overlap file or a family flag with --n");
        const gram::GramInput parsed = gram::load_gram_input(input);
        require(parsed.gram.has_value(),
                "oracle needs an explicit finite overlap");
        factor = gram::factor_gram(*parsed.gram);
    }
    const auto dist = qclt::oracle::exact_output_distribution(factor);
    Document doc;
    doc.j = seed(config);
    doc.j["n"] = factor.sources();
    doc.j["p"] = dist.p;
    doc.j["mean"] = dist.mean();
    doc.csv = csv_distribution(dist.p, 0.0);
    return doc;
}

Document run_converge(const RunConfig& config, const std::string& input) {
    require(input.empty(), "converge takes no overlap file");
    const bool indist = config.indistinguishable;

    const photonstats::PhotonNumberDistribution limit =
        indist ? photonstats::pnd_recursive({1.0}, 1.0, config.m_max,
                                            config.eps)
               : photonstats::pnd_interpolation(config.x, config.m_max);

    const auto family = [&](int n) {
        return indist ? all_ones_factor(static_cast<std::size_t>(n))
                      : interpolation_factor(config.x,
                                             static_cast<std::size_t>(n));
    };

    // TV against the limit law wherever the exact expansion is affordable.
    std::vector<std::optional<double>> tv(config.n_list.size());
    for (std::size_t i = 0; i < config.n_list.size(); ++i) {
        const int n = config.n_list[i];
        if (static_cast<std::size_t>(n) > kExactPhotonCap) continue;
        const auto exact = qclt::oracle::exact_output_distribution(family(n));
        const auto res =
            qclt::oracle::tv_distance(exact.p, 0.0, limit.p, limit.tail_bound);
        tv[i] = res.value + res.tail_allowance;
    }

    // Plancherel column only where the internal dimension stays quadrature
    // sized; the equal-overlap family grows its rank with n.
    std::optional<asymptotic::ConvergenceTable> plancherel;
    if (indist) {
        const auto state = asymptotic::build_asymptotic(
            gram::gamma_of(all_ones_factor(2)),
            asymptotic::InputMoments{1.0, cd{0.0, 0.0}});
        plancherel = asymptotic::convergence_sweep(
            family, asymptotic::SourceState::single_photon(),
            asymptotic::asymptotic_chi(state), 1, config.n_list);
    }

    Document doc;
    doc.j = seed(config);
    doc.j["r"] = config.r;
    doc.j["family"] = indist ? "indistinguishable" : "interpolation";
    ordered_json table = ordered_json::array();
    std::string csv = "n,tv,plancherel,slope_estimate\n";
    for (std::size_t i = 0; i < config.n_list.size(); ++i) {
        ordered_json row;
        row["n"] = config.n_list[i];
        row["tv"] = tv[i] ? ordered_json(*tv[i]) : ordered_json(nullptr);
        if (plancherel) {
            row["plancherel"] = plancherel->rows[i].distance;
            row["plancherel_error"] = plancherel->rows[i].error_estimate;
        } else {
            row["plancherel"] = nullptr;
            row["plancherel_error"] = nullptr;
        }
        table.push_back(row);

        csv += std::to_string(config.n_list[i]);
        csv += ',';
        if (tv[i]) csv += fmt17(*tv[i]);
        csv += ',';
        if (plancherel) csv += fmt17(plancherel->rows[i].distance);
        csv += ',';
        if (i + 1 == config.n_list.size() && plancherel && plancherel->slope)
            csv += fmt17(*plancherel->slope);
        csv += '\n';
    }
    doc.j["tv_table"] = table;
    doc.j["slope"] = (plancherel && plancherel->slope)
                         ? ordered_json(*plancherel->slope)
                         : ordered_json(nullptr);
    doc.csv = csv;
    return doc;
}

Document dispatch(const RunConfig& config, const std::string& input) {
    if (config.command == "gram") return run_gram(config, input);
    if (config.command == "asymptote") return run_asymptote(config, input);
    if (config.command == "pnd") return run_pnd(config, input);
    if (config.command == "interp") return run_interp(config, input);
    if (config.command == "moments") return run_moments(config, input);
    if (config.command == "oracle") return run_oracle(config, input);
    return run_converge(config, input);
}

void fail(RunResult& result, int code, const char* category,
          const std::string& what) {
    result.exit_code = code;
    result.document.clear();
    result.error_line =
        std::string("error: ") + category + ": " + single_line(what);
}

}  // namespace

RunResult run(const RunConfig& config, const std::string& input) {
    RunResult result;
    try {
        validate(config);
        Document doc = dispatch(config, input);
        result.document =
            config.format == "json" ? doc.j.dump(2) + "\n" : doc.csv;
    } catch (const unsupported_error& e) {
        fail(result, 2, "validation", e.what());
    } catch (const std::invalid_argument& e) {
        fail(result, 2, "validation", e.what());
    } catch (const std::domain_error& e) {
        fail(result, 2, "validation", e.what());
    } catch (const io_error& e) {
        fail(result, 3, "io", e.what());
    } catch (const numeric_error& e) {
        fail(result, 4, "numeric", e.what());
    }
    return result;
}

int main_entry(int argc, const char* const* argv) {
    RunConfig config;
    std::string gram_path, states_path;

    CLI::App app{"output statistics of unbiased interferometers"};
    app.add_option("command", config.command,
                   "gram | asymptote | pnd | interp | moments | converge | "
                   "oracle")
        ->required();
    app.add_option("--gram", gram_path, "overlap matrix JSON file");
    app.add_option("--states", states_path, "internal-state JSON file");
    app.add_option("--interpolation-x,--x", config.x,
                   "equal-overlap weight in [0, 1]");
    app.add_option("--n", config.n_list, "comma-separated source counts")
        ->delimiter(',');
    app.add_option("--r", config.r, "mean photons per source");
    app.add_option("--eps", config.eps, "truncation tolerance");
    app.add_option("--m-max", config.m_max, "entry cap");
    app.add_option("--format", config.format, "json | csv");
    app.add_option("--out", config.out, "output path or 'stdout'");
    app.add_flag("--indistinguishable", config.indistinguishable,
                 "all-ones overlap");
    app.add_flag("--single-photon,!--no-single-photon", config.single_photon,
                 "finite-n sources are single photons");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: validation: " << single_line(e.what()) << "\n";
        return 2;
    }

    if (!gram_path.empty() && !states_path.empty()) {
        std::cerr << "error: validation: give either --gram or --states\n";
        return 2;
    }
    config.input_path = gram_path.empty() ? states_path : gram_path;

    std::string input;
    if (!config.input_path.empty()) {
        std::ifstream in(config.input_path, std::ios::binary);
        if (!in.good()) {
            std::cerr << "error: io: cannot read '" << config.input_path
                      << "'\n";
            return 3;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        input = buffer.str();
    }

    const RunResult result = run(config, input);
    if (result.exit_code != 0) {
        std::cerr << result.error_line << "\n";
        return result.exit_code;
    }

    if (config.out == "stdout") {
        std::cout << result.document;
    } else {
        std::ofstream out(config.out, std::ios::binary);
        if (!out.good()) {
            std::cerr << "error: io: cannot write '" << config.out << "'\n";
            return 3;
        }
        out << result.document;
        if (!out.good()) {
            std::cerr << "error: io: short write to '" << config.out << "'\n";
            return 3;
        }
    }
    return 0;
}

}  // namespace qclt::cli
