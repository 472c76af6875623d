// primephase: regenerate the prime-counting phase tables and figure data.
//
//   primephase tables   --quantity cos_delta --eta eta1 --max 1e6
//   primephase hist     --max 1e4
//   primephase scan     2 10000 [--decimate log] [--pi-table FILE]
//   primephase bounds   2 10000 [--pi-table FILE]
//   primephase crossing --eta eta2

#include "primephase/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace primephase;
using namespace primephase::cli;

struct Args
{
    std::string max = "1e6";
    std::string eta = "eta1";
    std::string quantity = "cos_delta";
    std::string category = "all";
    std::string r_form = "tabulated";
    std::string format = "csv";
    std::string out;
    std::string pi_table;
    std::string decimate = "none";
    std::string x_lo;
    std::string x_hi;
    double eta_amplitude = -1.0;
};

void add_common(CLI::App* cmd, Args& a)
{
    cmd->add_option("--eta", a.eta, "Envelope")->check(CLI::IsMember({"eta1", "eta2"}));
    cmd->add_option("--r", a.r_form, "R(x) model: tabulated (14-term Moebius sum) or exact (Gram series)")
        ->check(CLI::IsMember({"tabulated", "exact"}));
    cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", a.out, "Write output to PATH instead of stdout");
}

void add_range(CLI::App* cmd, Args& a)
{
    cmd->add_option("x_lo", a.x_lo, "First x")->required();
    cmd->add_option("x_hi", a.x_hi, "Last x")->required();
    cmd->add_option("--pi-table", a.pi_table, "CSV of x,pi rows used instead of the sieve");
    cmd->add_option("--decimate", a.decimate, "Keep per-window min/max rows over 200 log windows")
        ->check(CLI::IsMember({"none", "log"}));
}

RunConfig to_config(const Args& a)
{
    RunConfig cfg;
    cfg.max_x = parse_count(a.max);
    cfg.eta_kind = *parse_envelope(a.eta);
    cfg.category = *parse_category(a.category);
    cfg.quantity = *parse_quantity(a.quantity);
    cfg.model = (*parse_r_form(a.r_form) == RForm::exact) ? RModel::exact() : RModel::tabulated();
    cfg.output_format = a.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!a.out.empty()) cfg.output_path = a.out;
    if (!a.pi_table.empty()) cfg.table_path = a.pi_table;
    cfg.decimation = a.decimate == "log" ? Decimation::log_window : Decimation::none;
    if (a.eta_amplitude >= 0.0) cfg.eta_amplitude = a.eta_amplitude;
    return cfg;
}

void emit(const Table& t, const RunConfig& cfg)
{
    if (cfg.output_path) {
        std::ofstream f(*cfg.output_path);
        if (!f) throw std::runtime_error("cannot open output file: " + *cfg.output_path);
        write_table(t, cfg.output_format, f);
        if (!f) throw std::runtime_error("write failed: " + *cfg.output_path);
    } else {
        write_table(t, cfg.output_format, std::cout);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Prime counting: pi(x) against li(x) and R(x), envelopes and the phase cos(delta)"};
    app.require_subcommand(1);
    Args a;

    auto* tables = app.add_subcommand("tables", "Mean, sigma and mean |.| over [2, 10^k]");
    tables->add_option("--max", a.max, "Largest range end (e.g. 1e6)");
    tables->add_option("--quantity", a.quantity, "Averaged quantity")
        ->check(CLI::IsMember({"sqrt_diff", "pi_minus_r", "cos_delta", "cos_delta_bar"}));
    tables->add_option("--category", a.category, "Sample subset")
        ->check(CLI::IsMember({"all", "prime", "even_composite", "odd_composite", "odd"}));
    add_common(tables, a);

    auto* hist = app.add_subcommand("hist", "21-bin cos(delta) distribution over [2, max]");
    hist->add_option("--max", a.max, "Range end (e.g. 1e4)");
    add_common(hist, a);

    auto* scan = app.add_subcommand("scan", "Per-integer phase data");
    add_range(scan, a);
    add_common(scan, a);

    auto* bounds = app.add_subcommand("bounds", "li - pi with its envelope bounds");
    add_range(bounds, a);
    add_common(bounds, a);
    bounds->add_option("--eta-amplitude", a.eta_amplitude, "Override the envelope amplitude a (0 collapses the bounds)")
        ->check(CLI::NonNegativeNumber);

    auto* crossing = app.add_subcommand("crossing", "ln x where the envelope admits a sign change of li - pi");
    add_common(crossing, a);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const RunConfig cfg = to_config(a);
        if (tables->parsed()) {
            emit(cmd_tables(cfg), cfg);
        } else if (hist->parsed()) {
            emit(cmd_hist(cfg), cfg);
        } else if (scan->parsed()) {
            emit(cmd_scan(cfg, parse_bound(a.x_lo), parse_bound(a.x_hi)), cfg);
        } else if (bounds->parsed()) {
            emit(cmd_bounds(cfg, parse_bound(a.x_lo), parse_bound(a.x_hi)), cfg);
        } else if (crossing->parsed()) {
            emit(cmd_crossing(cfg.eta_kind), cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
