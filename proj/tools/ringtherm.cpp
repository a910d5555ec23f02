#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringtherm/errors.hpp"
#include "ringtherm/ingest.hpp"
#include "ringtherm/lattice.hpp"
#include "ringtherm/layout.hpp"
#include "ringtherm/records.hpp"
#include "ringtherm/stats.hpp"
#include "ringtherm/sweep.hpp"

namespace {

using namespace ringtherm;

// requiredness is checked by the executed command, not by the parser, so a
// config file may carry sections for commands other than the invoked one
void require_given(const std::string& value, const char* flag) {
    if (value.empty())
        throw ConfigError(std::string("missing ") + flag + "; see --help");
}

std::uint64_t parse_seed(const std::string& text) {
    if (text.empty())
        throw ConfigError("no --seed given; pass an unsigned integer or an explicit 'auto'");
    if (text == "auto") {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError("seed must be an unsigned integer or 'auto', got '" + text + "'");
    return value;
}

long parse_long(const std::string& text, const char* what) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(std::string("bad ") + what + ": '" + text + "'");
    return value;
}

double parse_real(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw ConfigError(std::string("bad ") + what + ": '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t end = text.find(sep, start);
        out.push_back(text.substr(start, end - start));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

// "3..12" (inclusive) or "4,6,8"
std::vector<int> parse_site_list(const std::string& text) {
    std::vector<int> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        long lo = parse_long(text.substr(0, dots), "site range");
        long hi = parse_long(text.substr(dots + 2), "site range");
        if (hi < lo) throw ConfigError("site range upper end below lower end");
        for (long n = lo; n <= hi; ++n) out.push_back(static_cast<int>(n));
    } else {
        for (const auto& field : split(text, ','))
            out.push_back(static_cast<int>(parse_long(field, "site count")));
    }
    if (out.empty()) throw ConfigError("empty site list");
    return out;
}

// "0.05:1.0:0.05" (inclusive, positive step) or "0.2,0.8"
std::vector<double> parse_level_list(const std::string& text) {
    std::vector<double> out;
    auto fields = split(text, ':');
    if (fields.size() == 3) {
        double lo = parse_real(fields[0], "level range");
        double hi = parse_real(fields[1], "level range");
        double step = parse_real(fields[2], "level step");
        if (!(step > 0.0)) throw ConfigError("level step must be positive");
        for (int k = 0;; ++k) {
            double v = lo + k * step;
            if (v > hi + 1e-9 * step) break;
            out.push_back(v);
        }
    } else if (fields.size() == 1) {
        for (const auto& field : split(text, ','))
            out.push_back(parse_real(field, "disorder level"));
    } else {
        throw ConfigError("level list must be 'lo:hi:step' or comma-separated");
    }
    if (out.empty()) throw ConfigError("empty level list");
    return out;
}

std::vector<double> parse_real_list(const std::string& text, const char* what) {
    std::vector<double> out;
    for (const auto& field : split(text, ',')) out.push_back(parse_real(field, what));
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (const auto& field : split(text, ','))
        out.push_back(static_cast<int>(parse_long(field, what)));
    return out;
}

std::string json_real_array(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out + "]";
}

std::string json_int_array(const std::vector<int>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out + "]";
}

std::string json_count_array(const std::vector<long>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out + "]";
}

std::string json_histogram(const Histogram& h) {
    return "{\"edges\":" + json_real_array(h.edges) + ",\"counts\":" + json_count_array(h.counts) +
           "}";
}

struct SimulateOpts {
    int sites = 0;
    double eta = 0.8;
    double c_mean = 0.5;
    double z_normalized = 17.25;
    int samples = 120;
    int excited_site = 0;
    std::string seed;
    std::string out;
    std::string format = "jsonl";
};

void run_simulate(const SimulateOpts& o) {
    if (o.sites == 0) throw ConfigError("missing --sites; see --help");
    require_given(o.out, "--out");
    if (o.samples < 1) throw ConfigError("samples must be at least 1");
    DisorderSpec spec{o.c_mean, o.eta};
    spec.validate();
    auto records =
        simulate_ensemble(o.sites, spec, o.z_normalized, o.excited_site, o.samples,
                          parse_seed(o.seed));
    std::string body;
    for (const auto& r : records) {
        body += format_record(r);
        body += '\n';
    }
    write_text_atomic(o.out, body);
    std::cout << records.size() << " records -> " << o.out << "\n";
}

struct StatsOpts {
    std::string records;
    int resamples = 0; // 0 means match the ensemble size
    int repeats = 1000;
    int bins = 24;
    std::string seed;
    std::string out;
    std::string format = "json";
};

void run_stats(const StatsOpts& o) {
    require_given(o.records, "--records");
    require_given(o.out, "--out");
    std::vector<EnsembleRecord> records;
    if (o.records.size() >= 4 && o.records.substr(o.records.size() - 4) == ".csv")
        records = read_intensity_csv(o.records);
    else
        records = read_records(o.records);
    if (records.empty()) throw IoError("no records in " + o.records);
    for (const auto& r : records) r.validate();
    for (const auto& r : records)
        if (r.n_sites != records[0].n_sites || r.excited_site != records[0].excited_site)
            throw ConfigError("records mix lattice sizes or excited sites");

    int n_sites = records[0].n_sites;
    int resamples = o.resamples > 0 ? o.resamples : static_cast<int>(records.size());
    BootstrapReport boot = bootstrap_g2(records, resamples, o.repeats, parse_seed(o.seed));

    std::vector<double> mean_int(static_cast<std::size_t>(n_sites), 0.0);
    std::vector<double> excited, amplitudes;
    for (const auto& r : records) {
        for (int i = 0; i < n_sites; ++i)
            mean_int[static_cast<std::size_t>(i)] += r.intensities[static_cast<std::size_t>(i)];
        double at_site = r.intensities[static_cast<std::size_t>(r.excited_site)];
        excited.push_back(at_site);
        amplitudes.push_back(std::sqrt(at_site));
    }
    for (double& v : mean_int) v /= static_cast<double>(records.size());
    double lambda = localization_level(mean_int);

    // classification needs >= 50 non-identical samples; small or degenerate
    // ensembles still get the rest of the report
    std::string classification = "null";
    std::string label_note;
    try {
        AmplitudeClassification label = classify_amplitude_distribution(amplitudes);
        classification = "{\"label\":\"" + to_string(label.label) + "\"" +
                         ",\"log_likelihood_ratio\":" +
                         format_double(label.log_likelihood_ratio) + "}";
        label_note = to_string(label.label);
    } catch (const ConfigError& e) {
        label_note = std::string("unclassified (") + e.what() + ")";
    } catch (const ComputeError& e) {
        label_note = std::string("unclassified (") + e.what() + ")";
    }

    auto bounded_histogram = [&](const std::vector<double>& samples) {
        double lo = *std::min_element(samples.begin(), samples.end());
        double hi = *std::max_element(samples.begin(), samples.end());
        if (!(hi > lo)) hi = lo + 1.0; // degenerate ensembles land in one bin
        return histogram(samples, o.bins, lo, hi);
    };

    std::string report = "{\"n_records\":" + std::to_string(records.size());
    report += ",\"n_sites\":" + std::to_string(n_sites);
    report += ",\"excited_site\":" + std::to_string(records[0].excited_site);
    report += ",\"g2_mean\":" + format_double(boot.g2_mean);
    report += ",\"g2_std\":" + format_double(boot.g2_std);
    report += ",\"resamples\":" + std::to_string(boot.resample_size);
    report += ",\"repeats\":" + std::to_string(boot.repeats);
    report += ",\"lambda\":" + format_double(lambda);
    report += ",\"mean_intensities\":" + json_real_array(mean_int);
    report += ",\"classification\":" + classification;
    report += ",\"amplitude_histogram\":" + json_histogram(bounded_histogram(amplitudes));
    report += ",\"intensity_histogram\":" + json_histogram(bounded_histogram(excited));
    report += "}\n";
    write_text_atomic(o.out, report);
    std::cout << "g2 " << format_double(boot.g2_mean) << " +- " << format_double(boot.g2_std)
              << ", lambda " << format_double(lambda) << ", " << label_note << " -> " << o.out
              << "\n";
}

struct GridOpts {
    std::string sites = "3..30";
    std::string etas = "0.05:1.0:0.05";
    double z_normalized = 17.25;
    double c_mean = 0.5;
    int samples = 120;
    int repeats = 1000;
    std::string seed;
    std::string out;
    std::string format = "csv";
};

SweepGrid make_grid(const GridOpts& o) {
    SweepGrid grid;
    grid.site_counts = parse_site_list(o.sites);
    grid.disorder_levels = parse_level_list(o.etas);
    grid.z_normalized = o.z_normalized;
    grid.c_mean = o.c_mean;
    grid.ensemble_size = o.samples;
    grid.repeats = o.repeats;
    grid.master_seed = parse_seed(o.seed);
    grid.validate();
    return grid;
}

void run_sweep(const GridOpts& o) {
    require_given(o.out, "--out");
    SweepGrid grid = make_grid(o);
    auto cells = gap_map(grid);
    write_text_atomic(o.out, format_grid_csv(cells));
    std::cout << cells.size() << " cells -> " << o.out << "\n";
}

struct BoundOpts {
    GridOpts grid;
    double threshold = 0.3;
};

void run_bound(const BoundOpts& o) {
    require_given(o.grid.out, "--out");
    SweepGrid grid = make_grid(o.grid);
    auto cells = gap_map(grid);
    double bound = derive_bound(cells, o.threshold);
    std::string report = "{\"threshold\":" + format_double(o.threshold);
    report += ",\"bound\":" + format_double(bound);
    report += ",\"site_counts\":" + json_int_array(grid.site_counts);
    report += ",\"disorder_levels\":" + json_real_array(grid.disorder_levels);
    report += ",\"z_normalized\":" + format_double(grid.z_normalized);
    report += ",\"c_mean\":" + format_double(grid.c_mean);
    report += ",\"ensemble_size\":" + std::to_string(grid.ensemble_size);
    report += ",\"seed\":" + std::to_string(grid.master_seed);
    report += "}\n";
    write_text_atomic(o.grid.out, report);
    std::cout << "localization bound " << format_double(bound) << " at gap threshold "
              << format_double(o.threshold) << " -> " << o.grid.out << "\n";
}

struct SizeStudyOpts {
    int n_odd = 3;
    int n_even = 4;
    std::string sizes = "10,20,50,100,120,200";
    int repeats = 200;
    double eta = 0.8;
    double c_mean = 0.5;
    double z_normalized = 17.25;
    std::string seed;
    std::string out;
    std::string format = "csv";
};

void run_size_study(const SizeStudyOpts& o) {
    require_given(o.out, "--out");
    DisorderSpec spec{o.c_mean, o.eta};
    spec.validate();
    auto rows = ensemble_size_study(o.n_odd, o.n_even, parse_int_list(o.sizes, "ensemble size"),
                                    o.repeats, spec, o.z_normalized, parse_seed(o.seed));
    write_text_atomic(o.out, format_size_study_csv(rows));
    std::cout << rows.size() << " rows -> " << o.out << "\n";
}

struct LayoutOpts {
    std::string couplings;
    double d_ref_um = 9.76;
    double c_ref_per_mm = 0.5;
    double decay_length_um = 1.5;
    double wavelength_nm = 852.0;
    double waveguide_length_mm = 34.5;
    std::string out;
    std::string format = "csv";
};

void run_layout(const LayoutOpts& o) {
    require_given(o.couplings, "--couplings");
    require_given(o.out, "--out");
    CouplingCalibration cal{o.d_ref_um, o.c_ref_per_mm, o.decay_length_um, o.wavelength_nm};
    std::vector<double> chords;
    for (double c : parse_real_list(o.couplings, "coupling"))
        chords.push_back(coupling_to_distance(c, cal));
    ChipLayout layout = place_sites(chords, solve_circumradius(chords), o.waveguide_length_mm);

    std::string body;
    if (o.format == "json") {
        body = "{\"circumradius_um\":" + format_double(layout.circumradius_um);
        body += ",\"waveguide_length_mm\":" + format_double(layout.waveguide_length_mm);
        body += ",\"wavelength_nm\":" + format_double(o.wavelength_nm);
        body += ",\"x_um\":" + json_real_array(layout.x_um);
        body += ",\"y_um\":" + json_real_array(layout.y_um);
        body += ",\"chords_um\":" + json_real_array(layout.chords_um);
        body += "}\n";
    } else {
        body = "site,x_um,y_um,chord_to_next_um\n";
        for (std::size_t k = 0; k < layout.x_um.size(); ++k) {
            body += std::to_string(k);
            body += ',';
            body += format_double(layout.x_um[k]);
            body += ',';
            body += format_double(layout.y_um[k]);
            body += ',';
            body += format_double(layout.chords_um[k]);
            body += '\n';
        }
    }
    write_text_atomic(o.out, body);
    std::cout << layout.x_um.size() << " sites, circumradius "
              << format_double(layout.circumradius_um) << " um -> " << o.out << "\n";
}

struct IngestOpts {
    std::vector<std::string> images;
    std::string spots;
    std::string background = "annulus-median";
    int excited_site = 0;
    std::string out;
    std::string format = "csv";
};

std::vector<SiteSpot> read_spots(const std::string& path) {
    std::vector<SiteSpot> spots;
    std::size_t line_no = 0;
    for (const auto& line : split(read_text(path), '\n')) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("x_px,", 0) == 0) continue; // header
        auto fields = split(line, ',');
        if (fields.size() != 3)
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": expected x_px,y_px,radius_1e_px");
        spots.push_back({parse_real(fields[0], "spot x"), parse_real(fields[1], "spot y"),
                         parse_real(fields[2], "spot radius")});
    }
    if (spots.empty()) throw IoError("no spots in " + path);
    return spots;
}

void run_ingest(const IngestOpts& o) {
    if (o.images.empty()) throw ConfigError("missing --image; see --help");
    require_given(o.spots, "--spots");
    require_given(o.out, "--out");
    auto spots = read_spots(o.spots);
    BackgroundStrategy bg = o.background == "none" ? BackgroundStrategy::None
                                                   : BackgroundStrategy::AnnulusMedian;
    std::vector<EnsembleRecord> records;
    for (const auto& path : o.images) {
        EnsembleRecord r;
        r.seed = records.size();
        r.n_sites = static_cast<int>(spots.size());
        r.excited_site = o.excited_site;
        r.intensities = extract_site_intensities(load_image(path), spots, bg);
        r.validate();
        records.push_back(std::move(r));
    }

    std::string body;
    if (o.format == "jsonl") {
        for (const auto& r : records) {
            body += format_record(r);
            body += '\n';
        }
    } else {
        body = format_intensity_csv(records);
    }
    write_text_atomic(o.out, body);
    std::cout << records.size() << " images -> " << o.out << "\n";
}

void add_seed_out(CLI::App* sub, std::string& seed, std::string& out) {
    sub->add_option("--seed", seed,
                    "master seed, an unsigned integer or an explicit 'auto'");
    sub->add_option("--out", out, "output file path");
}

void add_grid_options(CLI::App* sub, GridOpts& o) {
    sub->add_option("--sites", o.sites, "site counts, 'lo..hi' or comma list")
        ->capture_default_str();
    sub->add_option("--etas", o.etas, "disorder levels, 'lo:hi:step' or comma list")
        ->capture_default_str();
    sub->add_option("--z", o.z_normalized, "normalized propagation distance z*c_mean")
        ->capture_default_str();
    sub->add_option("--c-mean", o.c_mean, "mean coupling in 1/mm")->capture_default_str();
    sub->add_option("--samples", o.samples, "disorder realizations per cell")
        ->capture_default_str();
    sub->add_option("--repeats", o.repeats, "bootstrap repeats per cell")->capture_default_str();
    add_seed_out(sub, o.seed, o.out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"disordered ring lattice simulator: parity-locked intensity statistics,\n"
                 "phase-diagram sweeps, chip layout and facet-image ingestion"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML file with per-command [section] defaults");

    SimulateOpts sim;
    auto* simulate = app.add_subcommand("simulate", "write a disorder-ensemble record file");
    simulate->configurable();
    simulate->add_option("--sites", sim.sites, "ring size N");
    simulate->add_option("--eta", sim.eta, "disorder level in [0, 1]")->capture_default_str();
    simulate->add_option("--c-mean", sim.c_mean, "mean coupling in 1/mm")->capture_default_str();
    simulate->add_option("--z", sim.z_normalized, "normalized propagation distance z*c_mean")
        ->capture_default_str();
    simulate->add_option("--samples", sim.samples, "number of disorder realizations")
        ->capture_default_str();
    simulate->add_option("--excited-site", sim.excited_site, "initially excited site index")
        ->capture_default_str();
    simulate->add_option("--format", sim.format, "output format")
        ->check(CLI::IsMember({"jsonl"}))
        ->capture_default_str();
    add_seed_out(simulate, sim.seed, sim.out);

    StatsOpts stats;
    auto* stats_cmd = app.add_subcommand("stats", "aggregate a record file into a report");
    stats_cmd->configurable();
    stats_cmd->add_option("--records", stats.records, "record file (.jsonl, or .csv from ingest)");
    stats_cmd
        ->add_option("--resamples", stats.resamples,
                     "bootstrap resample size, 0 to match the ensemble size")
        ->capture_default_str();
    stats_cmd->add_option("--repeats", stats.repeats, "bootstrap repeats")->capture_default_str();
    stats_cmd->add_option("--bins", stats.bins, "histogram bin count")->capture_default_str();
    stats_cmd->add_option("--format", stats.format, "output format")
        ->check(CLI::IsMember({"json"}))
        ->capture_default_str();
    add_seed_out(stats_cmd, stats.seed, stats.out);

    GridOpts sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "g2/lambda phase map over (N, eta)");
    sweep_cmd->configurable();
    add_grid_options(sweep_cmd, sweep);
    sweep_cmd->add_option("--format", sweep.format, "output format")
        ->check(CLI::IsMember({"csv"}))
        ->capture_default_str();

    BoundOpts bound;
    bound.grid.sites = "3..20";
    bound.grid.samples = 800;
    bound.grid.repeats = 200;
    auto* bound_cmd =
        app.add_subcommand("bound", "localization bound from the parity-gap boundary");
    bound_cmd->configurable();
    add_grid_options(bound_cmd, bound.grid);
    bound_cmd->add_option("--threshold", bound.threshold, "gap threshold marking closed cells")
        ->capture_default_str();
    bound_cmd->add_option("--format", bound.grid.format, "output format")
        ->check(CLI::IsMember({"json"}))
        ->default_str("json");

    SizeStudyOpts size_study;
    auto* size_cmd =
        app.add_subcommand("size-study", "g2 band separation versus ensemble size");
    size_cmd->configurable();
    size_cmd->add_option("--n-odd", size_study.n_odd, "odd ring size")->capture_default_str();
    size_cmd->add_option("--n-even", size_study.n_even, "even ring size")->capture_default_str();
    size_cmd->add_option("--sizes", size_study.sizes, "comma list of ensemble sizes, ascending")
        ->capture_default_str();
    size_cmd->add_option("--repeats", size_study.repeats, "independent ensembles per size")
        ->capture_default_str();
    size_cmd->add_option("--eta", size_study.eta, "disorder level in [0, 1]")
        ->capture_default_str();
    size_cmd->add_option("--c-mean", size_study.c_mean, "mean coupling in 1/mm")
        ->capture_default_str();
    size_cmd->add_option("--z", size_study.z_normalized, "normalized propagation distance")
        ->capture_default_str();
    size_cmd->add_option("--format", size_study.format, "output format")
        ->check(CLI::IsMember({"csv"}))
        ->capture_default_str();
    add_seed_out(size_cmd, size_study.seed, size_study.out);

    LayoutOpts layout;
    auto* layout_cmd =
        app.add_subcommand("layout", "waveguide chip coordinates for a coupling set");
    layout_cmd->configurable();
    layout_cmd->add_option("--couplings", layout.couplings, "comma list of couplings in 1/mm");
    layout_cmd->add_option("--d-ref", layout.d_ref_um, "reference separation in um")
        ->capture_default_str();
    layout_cmd->add_option("--c-ref", layout.c_ref_per_mm, "coupling at d-ref in 1/mm")
        ->capture_default_str();
    layout_cmd->add_option("--xi", layout.decay_length_um, "coupling decay length in um")
        ->capture_default_str();
    layout_cmd->add_option("--wavelength", layout.wavelength_nm, "design wavelength in nm")
        ->capture_default_str();
    layout_cmd->add_option("--length", layout.waveguide_length_mm, "waveguide length in mm")
        ->capture_default_str();
    layout_cmd->add_option("--format", layout.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    layout_cmd->add_option("--out", layout.out, "output file path");

    IngestOpts ingest;
    auto* ingest_cmd =
        app.add_subcommand("ingest", "extract site intensities from facet images");
    ingest_cmd->configurable();
    ingest_cmd->add_option("--image", ingest.images, "PGM image, repeatable");
    ingest_cmd->add_option("--spots", ingest.spots, "CSV of x_px,y_px,radius_1e_px per site");
    ingest_cmd->add_option("--background", ingest.background, "background subtraction")
        ->check(CLI::IsMember({"annulus-median", "none"}))
        ->capture_default_str();
    ingest_cmd->add_option("--excited-site", ingest.excited_site, "excited site index")
        ->capture_default_str();
    ingest_cmd->add_option("--format", ingest.format, "output format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    ingest_cmd->add_option("--out", ingest.out, "output file path");

    for (auto* sub : {simulate, stats_cmd, sweep_cmd, bound_cmd, size_cmd, layout_cmd, ingest_cmd})
        sub->fallthrough();

    // a config file section counts as a parsed subcommand in CLI11, so the
    // command to execute is resolved from argv alone after option merging
    std::vector<std::string> names{"simulate", "stats",  "sweep", "bound",
                                   "size-study", "layout", "ingest"};
    std::string chosen;
    for (int i = 1; i < argc && chosen.empty(); ++i) {
        std::string token = argv[i];
        if (token == "--config") {
            ++i;
            continue;
        }
        if (!token.empty() && token[0] == '-') continue;
        if (std::find(names.begin(), names.end(), token) != names.end()) chosen = token;
    }

    try {
        app.parse(argc, argv);
        if (chosen == "simulate")
            run_simulate(sim);
        else if (chosen == "stats")
            run_stats(stats);
        else if (chosen == "sweep")
            run_sweep(sweep);
        else if (chosen == "bound")
            run_bound(bound);
        else if (chosen == "size-study")
            run_size_study(size_study);
        else if (chosen == "layout")
            run_layout(layout);
        else if (chosen == "ingest")
            run_ingest(ingest);
        else
            throw ConfigError("a command is required; see --help");
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ComputeError& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
