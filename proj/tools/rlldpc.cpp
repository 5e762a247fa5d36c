// Command-line front end: matrix construction, rate adaptation, FER sweeps,
// key-rate curves, and file validation. Every command is deterministic given
// its config; seeds are explicit and timing appears only in labeled columns.

#include <charconv>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rlldpc/alist.hpp"
#include "rlldpc/channel.hpp"
#include "rlldpc/construct.hpp"
#include "rlldpc/decoder.hpp"
#include "rlldpc/ensemble.hpp"
#include "rlldpc/keyrate.hpp"
#include "rlldpc/rng.hpp"
#include "rlldpc/sim.hpp"
#include "rlldpc/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace rlldpc;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::runtime_error("bad list entry: '" + item + "'");
    }
    if (out.empty()) throw std::runtime_error("empty list: '" + text + "'");
    return out;
}

// "start:stop:step" or a comma list
std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') == std::string::npos) return parse_list(text);
    std::istringstream in(text);
    std::string a, b, c;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c))
        throw std::runtime_error("bad grid: '" + text + "'");
    const double start = std::stod(a), stop = std::stod(b), step = std::stod(c);
    if (step <= 0) throw std::runtime_error("grid step must be positive");
    std::vector<double> out;
    for (double v = start; v <= stop + 1e-9 * step; v += step) out.push_back(v);
    if (out.empty()) throw std::runtime_error("empty grid: '" + text + "'");
    return out;
}

DegreeDistribution load_distribution(const std::string& path, std::string& id) {
    if (path.empty()) {
        id = "r002";
        return ensemble_rate002();
    }
    id = path;
    if (auto slash = id.find_last_of('/'); slash != std::string::npos) id = id.substr(slash + 1);
    if (auto dot = id.find_last_of('.'); dot != std::string::npos) id = id.substr(0, dot);
    return load_ensemble(path);
}

void emit_stats(const RLLDPCCode& code, const std::string& out_prefix) {
    StatsReport stats = matrix_stats(code);
    const std::string text = stats.to_text();
    std::ofstream f(out_prefix + ".stats");
    if (!f) throw std::runtime_error("cannot open for writing: " + out_prefix + ".stats");
    f << text;
    std::cout << text;
}

int cmd_construct(const std::string& ensemble_path, const std::string& scale_text,
                  std::uint64_t seed, const std::string& out_prefix) {
    std::string id;
    DegreeDistribution dist = load_distribution(ensemble_path, id);
    Rational scale = parse_rational(scale_text);
    RLLDPCCode code = construct_base(dist, scale, seed, id);
    write_code(code, out_prefix);
    emit_stats(code, out_prefix);
    return kExitOk;
}

int cmd_adapt(const std::string& in_prefix, const std::string& out_prefix, std::int64_t p,
              std::int64_t e, double target_snr, double beta, std::int64_t align,
              std::uint64_t seed) {
    RLLDPCCode code = read_code(in_prefix);
    const bool have_p = p >= 0, have_e = e >= 0, have_plan = target_snr > 0.0;
    if (have_p + have_e + have_plan != 1)
        throw CLI::ValidationError("adapt", "give exactly one of --p, --e, --target-snr");
    if (have_plan) {
        RateLimits limits;
        limits.max_p = code.layout.cd_rows - 1;
        limits.max_e = 10 * code.matrix.cols();
        limits.length_multiple = align;
        RatePlan plan = plan_rate(code.matrix.cols(), code.matrix.rows(), target_snr, beta, limits);
        std::cout << "plan=" << rate_mode_name(plan.mode) << " length=" << plan.length
                  << " rate=" << format_rational(plan.achieved_rate)
                  << " beta=" << fmt_double(plan.achieved_efficiency) << "\n";
        switch (plan.mode) {
            case RateMode::None: break;
            case RateMode::Puncture: code = puncture(code, plan.length); break;
            case RateMode::Extend: code = extend(code, plan.length, seed); break;
        }
    } else if (have_p) {
        code = puncture(code, p);
    } else {
        code = extend(code, e, seed);
    }
    write_code(code, out_prefix);
    emit_stats(code, out_prefix);
    return kExitOk;
}

int cmd_fer_sweep(const std::string& in_prefix, const std::string& out_csv,
                  const std::string& beta_list, const std::string& snr_list, int frames,
                  int max_iters, bool no_early_stop, double llr_clamp, int batch,
                  std::uint64_t seed, int threads) {
    if (threads > 0) {
#ifdef _OPENMP
        omp_set_num_threads(threads);
#endif
    }
    RLLDPCCode code = read_code(in_prefix);
    const double rate = to_double(code.rate());

    std::vector<std::pair<double, double>> grid;  // (snr, beta)
    if (!beta_list.empty()) {
        for (double beta : parse_list(beta_list))
            grid.emplace_back(snr_for_capacity(rate / beta), beta);
    } else if (!snr_list.empty()) {
        for (double snr : parse_list(snr_list)) grid.emplace_back(snr, efficiency(rate, snr));
    } else {
        throw CLI::ValidationError("fer-sweep", "give --beta-list or --snr-list");
    }

    BpDecoder decoder(code.matrix);
    SimOptions options;
    options.decoder.max_iterations = max_iters;
    options.decoder.early_stop = !no_early_stop;
    options.decoder.llr_clamp = llr_clamp;
    options.root_seed = seed;
    options.batch = batch;

    std::ofstream csv(out_csv);
    if (!csv) throw std::runtime_error("cannot open for writing: " + out_csv);
    csv << "snr,beta,frames,errors,fer,mean_iters,wall_ms,undetected\n";
    for (const auto& [snr, beta] : grid) {
        FerPoint pt = run_fer_point(decoder, snr, beta, frames, options);
        csv << fmt_double(pt.snr) << ',' << fmt_double(pt.beta) << ',' << pt.frames << ','
            << pt.errors << ',' << fmt_double(pt.fer) << ',' << fmt_double(pt.mean_iterations)
            << ',' << fmt_double(pt.wall_ms) << ',' << pt.undetected << "\n";
        std::cout << "snr=" << fmt_double(pt.snr) << " beta=" << fmt_double(pt.beta)
                  << " fer=" << fmt_double(pt.fer) << " mean_iters=" << fmt_double(pt.mean_iterations)
                  << "\n";
    }
    return kExitOk;
}

int cmd_keyrate(const std::string& out_csv, const std::string& distances, double beta, double fer,
                double alpha, std::int64_t block_size, double eps, double loss, double eta,
                double excess_noise, double electronic_noise) {
    KeyRateInputs inputs;
    inputs.alpha = alpha;
    inputs.fer = fer;
    inputs.beta = beta;
    inputs.block_size_n = block_size;
    inputs.security_eps = eps;
    inputs.channel.loss_db_per_km = loss;
    inputs.channel.detector_efficiency = eta;
    inputs.channel.excess_noise = excess_noise;
    inputs.channel.electronic_noise = electronic_noise;

    std::ofstream csv(out_csv);
    if (!csv) throw std::runtime_error("cannot open for writing: " + out_csv);
    csv << "distance_km,snr,v_a_opt,i_ab,chi_be,delta_n,k,plob\n";
    for (double d : parse_grid(distances)) {
        inputs.channel.distance_km = d;
        const double va = optimal_modulation_variance(inputs);
        inputs.channel.modulation_variance = va;
        const double snr = distance_to_snr(inputs.channel);
        const double i_ab = mutual_information(snr);
        const double chi = holevo_bound(inputs.channel);
        const double delta = finite_size_offset(inputs.block_size_n, inputs.security_eps);
        const double k = secret_key_rate(inputs);
        const double plob = plob_bound(transmittance(inputs.channel));
        csv << fmt_double(d) << ',' << fmt_double(snr) << ',' << fmt_double(va) << ','
            << fmt_double(i_ab) << ',' << fmt_double(chi) << ',' << fmt_double(delta) << ','
            << fmt_double(k) << ',' << fmt_double(plob) << "\n";
    }
    return kExitOk;
}

int cmd_validate(const std::string& alist_path, const std::string& ensemble_path) {
    int failures = 0;
    auto report = [&failures](bool ok, const std::string& what) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        failures += !ok;
    };

    SparseBinaryMatrix m = read_alist(alist_path);
    m.check_consistency();
    report(true, "alist structure consistent (" + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", " + std::to_string(m.edge_count()) + " edges)");

    std::string id;
    DegreeDistribution dist = load_distribution(ensemble_path, id);
    ValidationReport dist_report = validate_distribution(dist);
    report(dist_report.ok(), "ensemble valid");
    if (!dist_report.ok()) std::cout << dist_report.to_text();

    const Rational ensemble_rate = code_rate(dist);
    const Rational matrix_rate(m.cols() - m.rows(), m.cols());
    report(matrix_rate == ensemble_rate, "rate: matrix " + format_rational(matrix_rate) +
                                             " vs ensemble " + format_rational(ensemble_rate));
    if (matrix_rate != ensemble_rate) return kExitFailure;

    // base-shape degree histograms, scaled from the ensemble coefficients
    const Rational scale = Rational(m.cols()) / 1'000'000;
    bool counts_ok = true;
    std::string detail;
    try {
        BaseCounts counts = scaled_counts(dist, scale);
        auto col_hist = m.col_degree_histogram();
        auto row_hist = m.row_degree_histogram();
        std::map<int, std::int64_t> expect_cols, expect_rows;
        for (auto& [w, cnt] : counts.ab_col_weights) expect_cols[w + counts.cd_col_weight] += cnt;
        expect_cols[1] += counts.cd_rows();  // identity columns
        for (auto& [w, cnt] : counts.ab_row_weights) expect_rows[w] += cnt;
        for (auto& [w, cnt] : counts.cd_row_weights) expect_rows[w + 1] += cnt;
        if (col_hist != expect_cols) {
            counts_ok = false;
            detail = "column degree histogram differs from ensemble";
        }
        if (row_hist != expect_rows) {
            counts_ok = false;
            detail = "row degree histogram differs from ensemble";
        }
    } catch (const std::exception& e) {
        counts_ok = false;
        detail = e.what();
    }
    report(counts_ok, counts_ok ? "degree histograms match ensemble" : detail);

    return failures == 0 ? kExitOk : kExitFailure;
}

int cmd_decode(const std::string& in_prefix, double snr, std::uint64_t seed, int max_iters,
               bool no_early_stop, int threads, const std::string& side_info_out,
               const std::string& side_info_in) {
    RLLDPCCode code = read_code(in_prefix);
    BpDecoder decoder(code.matrix);
    const std::int64_t n = code.matrix.cols();

    std::vector<double> y = gaussian_source(n, 1.0, derive_seed(seed, 11));
    std::vector<double> x = awgn(y, snr, derive_seed(seed, 12));
    std::vector<std::uint8_t> key(n);
    {
        Rng rng(derive_seed(seed, 13));
        std::uint64_t word = 0;
        int left = 0;
        for (std::int64_t i = 0; i < n; ++i) {
            if (left == 0) {
                word = rng.bits();
                left = 64;
            }
            key[i] = word & 1;
            word >>= 1;
            --left;
        }
    }

    SideInformation side = reconcile_transmit(y, key);
    if (!side_info_out.empty()) {
        std::ofstream f(side_info_out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open for writing: " + side_info_out);
        write_side_info(f, side);
        std::cout << "side_info_bytes=" << 8 + side.mappings.size() * 64 * 8 << "\n";
    }
    if (!side_info_in.empty()) {
        std::ifstream f(side_info_in, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open: " + side_info_in);
        side = read_side_info(f);
    }

    std::vector<double> llrs = reconcile_receive(x, side, snr);
    std::vector<std::uint8_t> target = decoder.syndrome_of(key);

    DecoderConfig config;
    config.max_iterations = max_iters;
    config.early_stop = !no_early_stop;
    config.threads = threads;
    DecodeResult result = decoder.decode(llrs, target, config);

    std::int64_t bit_errors = 0;
    for (std::int64_t i = 0; i < n; ++i) bit_errors += result.hard_bits[i] != key[i];
    std::cout << "converged=" << (result.converged ? 1 : 0) << "\n"
              << "iterations=" << result.iterations_used << "\n"
              << "syndrome_weight=" << result.final_syndrome_weight << "\n"
              << "bit_errors=" << bit_errors << "\n"
              << "frame_error=" << ((result.converged && bit_errors == 0) ? 0 : 1) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"raptor-like LDPC reconciliation toolkit"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "build a base parity-check matrix");
    std::string c_ensemble, c_scale = "1", c_out;
    std::uint64_t c_seed = 1;
    construct->set_config("--config");
    construct->add_option("--ensemble", c_ensemble, "ensemble file (default: built-in rate 0.02)");
    construct->add_option("--scale", c_scale, "construction scale, e.g. 1 or 1/25");
    construct->add_option("--seed", c_seed, "construction seed");
    construct->add_option("--out", c_out, "output prefix (.alist/.meta/.stats)")->required();

    // adapt
    auto* adapt = app.add_subcommand("adapt", "puncture or extend a base matrix");
    std::string a_in, a_out;
    std::int64_t a_p = -1, a_e = -1, a_align = 1;
    double a_snr = 0.0, a_beta = 0.0;
    std::uint64_t a_seed = 1;
    adapt->set_config("--config");
    adapt->add_option("--in", a_in, "input prefix")->required();
    adapt->add_option("--out", a_out, "output prefix")->required();
    adapt->add_option("--p", a_p, "punctured length");
    adapt->add_option("--e", a_e, "extended length");
    adapt->add_option("--target-snr", a_snr, "plan a rate for this SNR");
    adapt->add_option("--beta", a_beta, "target efficiency for --target-snr");
    adapt->add_option("--align", a_align, "round planned lengths to this multiple");
    adapt->add_option("--seed", a_seed, "seed for extension rows");

    // fer-sweep
    auto* sweep = app.add_subcommand("fer-sweep", "Monte-Carlo frame-error-rate sweep");
    std::string s_in, s_out, s_betas, s_snrs;
    int s_frames = 200, s_iters = 400, s_batch = 0, s_threads = 0;
    bool s_no_early = false;
    double s_clamp = 30.0;
    std::uint64_t s_seed = 1;
    sweep->set_config("--config");
    sweep->add_option("--in", s_in, "input prefix")->required();
    sweep->add_option("--out", s_out, "output CSV")->required();
    sweep->add_option("--beta-list", s_betas, "comma list of efficiencies (SNR matched per point)");
    sweep->add_option("--snr-list", s_snrs, "comma list of SNRs");
    sweep->add_option("--frames", s_frames, "frames per grid point");
    sweep->add_option("--max-iters", s_iters, "decoder iteration cap");
    sweep->add_flag("--no-early-stop", s_no_early, "disable per-iteration syndrome checks");
    sweep->add_option("--llr-clamp", s_clamp, "message clamp");
    sweep->add_option("--batch", s_batch, "frames per decode batch (0 = all)");
    sweep->add_option("--seed", s_seed, "root seed");
    sweep->add_option("--threads", s_threads, "OpenMP thread cap (0 = default)");

    // keyrate
    auto* keyrate = app.add_subcommand("keyrate", "finite-size secret-key-rate curve");
    std::string k_out, k_dist = "10:160:10";
    double k_beta = 0.95, k_fer = 0.0, k_alpha = 1.0, k_eps = 1e-10;
    double k_loss = 0.2, k_eta = 0.6, k_xi = 0.01, k_vel = 0.015;
    std::int64_t k_n = 10'000'000'000;
    keyrate->set_config("--config");
    keyrate->add_option("--out", k_out, "output CSV")->required();
    keyrate->add_option("--distances", k_dist, "km grid: start:stop:step or comma list");
    keyrate->add_option("--beta", k_beta, "reconciliation efficiency");
    keyrate->add_option("--fer", k_fer, "frame error rate");
    keyrate->add_option("--alpha", k_alpha, "key-extraction fraction");
    keyrate->add_option("--block-size", k_n, "finite-size block length n");
    keyrate->add_option("--eps", k_eps, "security parameter");
    keyrate->add_option("--loss", k_loss, "fiber loss dB/km");
    keyrate->add_option("--eta", k_eta, "detector efficiency");
    keyrate->add_option("--excess-noise", k_xi, "excess noise (shot-noise units)");
    keyrate->add_option("--electronic-noise", k_vel, "electronic noise (shot-noise units)");

    // validate
    auto* validate = app.add_subcommand("validate", "check an alist against an ensemble");
    std::string v_alist, v_ensemble;
    validate->add_option("--alist", v_alist, "alist file")->required();
    validate->add_option("--ensemble", v_ensemble, "ensemble file (default: built-in rate 0.02)");

    // decode
    auto* decode = app.add_subcommand("decode", "single-frame decode (debug)");
    std::string d_in, d_sout, d_sin;
    double d_snr = 0.0;
    std::uint64_t d_seed = 1;
    int d_iters = 400, d_threads = 0;
    bool d_no_early = false;
    decode->set_config("--config");
    decode->add_option("--in", d_in, "input prefix")->required();
    decode->add_option("--snr", d_snr, "channel SNR")->required();
    decode->add_option("--seed", d_seed, "frame seed");
    decode->add_option("--max-iters", d_iters, "decoder iteration cap");
    decode->add_flag("--no-early-stop", d_no_early, "disable per-iteration syndrome checks");
    decode->add_option("--threads", d_threads, "OpenMP thread cap (0 = default)");
    decode->add_option("--side-info-out", d_sout, "write side information stream");
    decode->add_option("--side-info-in", d_sin, "read side information stream back");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*construct) return cmd_construct(c_ensemble, c_scale, c_seed, c_out);
        if (*adapt) return cmd_adapt(a_in, a_out, a_p, a_e, a_snr, a_beta, a_align, a_seed);
        if (*sweep)
            return cmd_fer_sweep(s_in, s_out, s_betas, s_snrs, s_frames, s_iters, s_no_early,
                                 s_clamp, s_batch, s_seed, s_threads);
        if (*keyrate)
            return cmd_keyrate(k_out, k_dist, k_beta, k_fer, k_alpha, k_n, k_eps, k_loss, k_eta,
                               k_xi, k_vel);
        if (*validate) return cmd_validate(v_alist, v_ensemble);
        if (*decode)
            return cmd_decode(d_in, d_snr, d_seed, d_iters, d_no_early, d_threads, d_sout, d_sin);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
