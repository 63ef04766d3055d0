// segreg: segregation analysis of particle images.
//
// Subcommands: analyze (one image, one grid), sweep (all grids up to a
// maximum), synth (deterministic test images), batch (a directory).
// Exit codes: 0 success, 3 input/output failure, 4 no edges detected,
// 5 invalid parameters.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "segreg/segreg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 3;
constexpr int kExitNoEdges = 4;
constexpr int kExitInvalid = 5;

int exit_code_for(seg_status status) {
    switch (status) {
        case SEG_OK:
            return kExitOk;
        case SEG_ERR_FILE_NOT_FOUND:
        case SEG_ERR_UNSUPPORTED_FORMAT:
        case SEG_ERR_CORRUPT_IMAGE:
        case SEG_ERR_IO:
            return kExitIo;
        case SEG_ERR_NO_EDGES:
            return kExitNoEdges;
        default:
            return kExitInvalid;
    }
}

int fail(seg_status status) {
    std::cerr << "error: " << seg_last_error() << " [" << seg_status_name(status)
              << "]\n";
    return exit_code_for(status);
}

int fail_io(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitIo;
}

struct ImageDeleter {
    void operator()(seg_image* p) const { seg_image_free(p); }
};
struct EdgeMapDeleter {
    void operator()(seg_edge_map* p) const { seg_edge_map_free(p); }
};
struct BinaryMapDeleter {
    void operator()(seg_binary_map* p) const { seg_binary_map_free(p); }
};
struct ReportDeleter {
    void operator()(seg_report* p) const { seg_report_free(p); }
};
struct SweepDeleter {
    void operator()(seg_sweep* p) const { seg_sweep_free(p); }
};
using ImagePtr = std::unique_ptr<seg_image, ImageDeleter>;
using EdgeMapPtr = std::unique_ptr<seg_edge_map, EdgeMapDeleter>;
using BinaryMapPtr = std::unique_ptr<seg_binary_map, BinaryMapDeleter>;
using ReportPtr = std::unique_ptr<seg_report, ReportDeleter>;
using SweepPtr = std::unique_ptr<seg_sweep, SweepDeleter>;

std::string format4(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return buf;
}

/// Shortest round-trip rendering, for echoing configuration values.
std::string format_value(double value) { return nlohmann::json(value).dump(); }

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

bool write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return static_cast<bool>(out.flush());
}

/// Detection settings shared by analyze, sweep, and batch.
struct PipelineOptions {
    std::string input;
    std::string out;
    std::string edge_map;
    unsigned rows = 7;
    unsigned cols = 7;
    double sigma;
    double low;
    double high;
    double threshold = 0.5;

    PipelineOptions() {
        const seg_detector_params d = seg_default_detector_params();
        sigma = d.gaussian_sigma;
        low = d.low_threshold;
        high = d.high_threshold;
    }

    seg_detector_params detector() const { return {sigma, low, high}; }
};

void add_detector_flags(CLI::App* cmd, PipelineOptions& opt) {
    cmd->add_option("--sigma", opt.sigma, "Gaussian smoothing sigma")
        ->capture_default_str();
    cmd->add_option("--low", opt.low,
                    "Low hysteresis threshold, fraction of the peak gradient")
        ->capture_default_str();
    cmd->add_option("--high", opt.high,
                    "High hysteresis threshold, fraction of the peak gradient")
        ->capture_default_str();
    cmd->add_option("--threshold", opt.threshold,
                    "Binarization threshold on edge strength, in (0,1)")
        ->capture_default_str();
}

/// Loads the input image and, when requested, the imported edge map whose
/// size must match it. Returns SEG_OK and fills both handles.
seg_status load_inputs(const PipelineOptions& opt, ImagePtr& image, EdgeMapPtr& map) {
    seg_image* raw_image = nullptr;
    seg_status status = seg_image_load(opt.input.c_str(), &raw_image);
    if (status != SEG_OK) return status;
    image.reset(raw_image);

    if (!opt.edge_map.empty()) {
        seg_edge_map* raw_map = nullptr;
        status = seg_edge_map_import(opt.edge_map.c_str(), seg_image_width(image.get()),
                                     seg_image_height(image.get()), &raw_map);
        if (status != SEG_OK) return status;
        map.reset(raw_map);
    }
    return SEG_OK;
}

std::string render_source_json(const PipelineOptions& opt, const std::string& indent) {
    std::ostringstream out;
    out << indent << "\"source\": {\n";
    out << indent << "  \"input\": " << json_string(opt.input) << ",\n";
    if (!opt.edge_map.empty()) {
        out << indent << "  \"edge_map\": " << json_string(opt.edge_map) << ",\n";
    } else {
        out << indent << "  \"detector\": {\n";
        out << indent << "    \"gaussian_sigma\": " << format_value(opt.sigma) << ",\n";
        out << indent << "    \"low_threshold\": " << format_value(opt.low) << ",\n";
        out << indent << "    \"high_threshold\": " << format_value(opt.high) << "\n";
        out << indent << "  },\n";
    }
    out << indent << "  \"binarize_threshold\": " << format_value(opt.threshold)
        << "\n";
    out << indent << "}";
    return out.str();
}

std::string render_report_json(const PipelineOptions& opt, bool no_edges, double index,
                               std::uint64_t total, const std::vector<std::uint64_t>& cells) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"grid\": {\n";
    out << "    \"rows\": " << opt.rows << ",\n";
    out << "    \"cols\": " << opt.cols << "\n";
    out << "  },\n";
    if (no_edges) {
        out << "  \"index\": null,\n";
        out << "  \"status\": \"no_edges\",\n";
    } else {
        out << "  \"index\": " << format4(index) << ",\n";
    }
    out << "  \"total_edge_pixels\": " << total << ",\n";
    out << "  \"cells\": [";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out << ", ";
        out << cells[i];
    }
    out << "],\n";
    out << render_source_json(opt, "  ") << "\n";
    out << "}\n";
    return out.str();
}

std::string render_report_csv(const PipelineOptions& opt, bool no_edges, double index,
                              std::uint64_t total) {
    std::ostringstream out;
    out << "input,rows,cols,index,total_edge_pixels,status\n";
    out << csv_field(opt.input) << ',' << opt.rows << ',' << opt.cols << ','
        << (no_edges ? "NA" : format4(index)) << ',' << total << ','
        << (no_edges ? "no_edges" : "ok") << '\n';
    return out.str();
}

int run_analyze(PipelineOptions& opt, const std::string& format,
                const std::string& save_edge_map, const std::string& save_binary_map) {
    ImagePtr image;
    EdgeMapPtr imported;
    seg_status status = load_inputs(opt, image, imported);
    if (status != SEG_OK) return fail(status);

    EdgeMapPtr map = std::move(imported);
    if (!map) {
        const seg_detector_params params = opt.detector();
        seg_edge_map* raw = nullptr;
        status = seg_detect_edges(image.get(), &params, &raw);
        if (status != SEG_OK) return fail(status);
        map.reset(raw);
    }

    if (!save_edge_map.empty()) {
        status = seg_edge_map_export(map.get(), save_edge_map.c_str());
        if (status != SEG_OK) return fail(status);
    }
    if (!save_binary_map.empty()) {
        seg_binary_map* raw_bin = nullptr;
        status = seg_binarize(map.get(), opt.threshold, &raw_bin);
        if (status != SEG_OK) return fail(status);
        BinaryMapPtr binary(raw_bin);
        seg_binary_map* raw_thin = nullptr;
        status = seg_thin(binary.get(), &raw_thin);
        if (status != SEG_OK) return fail(status);
        BinaryMapPtr thinned(raw_thin);
        status = seg_binary_map_export(thinned.get(), save_binary_map.c_str());
        if (status != SEG_OK) return fail(status);
    }

    seg_report* raw_report = nullptr;
    status = seg_evaluate_map(map.get(), opt.rows, opt.cols, opt.threshold, &raw_report);
    const bool no_edges = status == SEG_ERR_NO_EDGES;
    if (status != SEG_OK && !no_edges) return fail(status);
    ReportPtr report(raw_report);

    double index = 0.0;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> cells(static_cast<std::size_t>(opt.rows) * opt.cols, 0);
    if (!no_edges) {
        index = seg_report_index(report.get());
        total = seg_report_total_edge_pixels(report.get());
        const std::uint64_t* y = seg_report_cell_lengths(report.get());
        cells.assign(y, y + cells.size());
    }

    const std::string rendered =
        format == "csv" ? render_report_csv(opt, no_edges, index, total)
                        : render_report_json(opt, no_edges, index, total, cells);
    const std::string out_path =
        opt.out.empty() ? opt.input + (format == "csv" ? ".report.csv" : ".report.json")
                        : opt.out;
    if (!write_text_file(out_path, rendered))
        return fail_io("cannot write report to " + out_path);

    std::cout << (no_edges ? std::string("NA") : format4(index)) << "\n";
    if (no_edges) {
        std::cerr << "error: no edge pixels inside the grid region [no_edges]\n";
        return kExitNoEdges;
    }
    return kExitOk;
}

std::string render_sweep_csv(const seg_sweep* sweep) {
    const unsigned max_rows = seg_sweep_max_rows(sweep);
    const unsigned max_cols = seg_sweep_max_cols(sweep);
    std::ostringstream out;
    out << "rows\\cols";
    for (unsigned c = 1; c <= max_cols; ++c) out << ',' << c;
    out << '\n';
    for (unsigned r = 1; r <= max_rows; ++r) {
        out << r;
        for (unsigned c = 1; c <= max_cols; ++c) {
            double value = 0.0;
            const seg_status status = seg_sweep_value(sweep, r, c, &value);
            out << ',' << (status == SEG_OK ? format4(value) : "NA");
        }
        out << '\n';
    }
    return out.str();
}

int run_sweep(PipelineOptions& opt, unsigned max_rows, unsigned max_cols) {
    ImagePtr image;
    EdgeMapPtr imported;
    seg_status status = load_inputs(opt, image, imported);
    if (status != SEG_OK) return fail(status);

    seg_sweep* raw = nullptr;
    if (imported) {
        status = seg_sweep_run_map(imported.get(), max_rows, max_cols, opt.threshold,
                                   &raw);
    } else {
        const seg_detector_params params = opt.detector();
        status = seg_sweep_run(image.get(), max_rows, max_cols, &params, opt.threshold,
                               &raw);
    }
    if (status != SEG_OK) return fail(status);
    SweepPtr sweep(raw);

    const std::string rendered = render_sweep_csv(sweep.get());
    const std::string out_path = opt.out.empty() ? opt.input + ".sweep.csv" : opt.out;
    if (!write_text_file(out_path, rendered))
        return fail_io("cannot write sweep table to " + out_path);
    std::cout << rendered;

    bool any_value = false;
    for (unsigned r = 1; r <= max_rows && !any_value; ++r) {
        for (unsigned c = 1; c <= max_cols && !any_value; ++c) {
            double value = 0.0;
            any_value = seg_sweep_value(sweep.get(), r, c, &value) == SEG_OK;
        }
    }
    if (!any_value) {
        std::cerr << "error: no edge pixels in any grid region [no_edges]\n";
        return kExitNoEdges;
    }
    return kExitOk;
}

const char* layout_name(seg_layout layout) {
    switch (layout) {
        case SEG_LAYOUT_UNIFORM: return "uniform";
        case SEG_LAYOUT_CLUSTERED: return "clustered";
        case SEG_LAYOUT_SEPARATED: return "separated";
    }
    return "unknown";
}

int run_synth(const seg_synth_spec& spec, const std::string& out_path) {
    if (spec.particle_count < 20 || spec.particle_count > 300)
        std::cerr << "note: indices are most reliable for particle counts"
                     " between 20 and 300\n";

    seg_image* raw = nullptr;
    seg_status status = seg_synth_generate(&spec, &raw);
    if (status != SEG_OK) return fail(status);
    ImagePtr image(raw);

    status = seg_image_write_png(image.get(), out_path.c_str());
    if (status != SEG_OK) return fail(status);

    std::cout << "synth layout=" << layout_name(spec.layout) << " width=" << spec.width
              << " height=" << spec.height << " count=" << spec.particle_count
              << " rmin=" << spec.radius_min << " rmax=" << spec.radius_max;
    if (spec.layout == SEG_LAYOUT_CLUSTERED)
        std::cout << " clusters=" << spec.cluster_count
                  << " spread=" << format_value(spec.cluster_spread);
    if (spec.layout == SEG_LAYOUT_SEPARATED)
        std::cout << " fraction=" << format_value(spec.species_fraction);
    std::cout << " background=" << static_cast<unsigned>(spec.background_level)
              << " foreground=" << static_cast<unsigned>(spec.particle_level)
              << " seed=" << spec.seed << " -> " << out_path << "\n";
    return kExitOk;
}

struct BatchRow {
    std::string path;
    std::string index = "NA";
    std::uint64_t total = 0;
    std::string status = "ok";
};

BatchRow analyze_one(const std::string& path, const PipelineOptions& shared) {
    BatchRow row;
    row.path = path;

    seg_image* raw_image = nullptr;
    seg_status status = seg_image_load(path.c_str(), &raw_image);
    if (status != SEG_OK) {
        row.status = seg_status_name(status);
        return row;
    }
    ImagePtr image(raw_image);

    const seg_detector_params params = shared.detector();
    seg_report* raw_report = nullptr;
    status = seg_evaluate(image.get(), shared.rows, shared.cols, &params,
                          shared.threshold, &raw_report);
    if (status != SEG_OK) {
        row.status = seg_status_name(status);
        return row;
    }
    ReportPtr report(raw_report);
    row.index = format4(seg_report_index(report.get()));
    row.total = seg_report_total_edge_pixels(report.get());
    return row;
}

bool has_image_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

int run_batch(PipelineOptions& opt, unsigned jobs) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(opt.input, ec))
        return fail_io(opt.input + " is not a readable directory");

    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(opt.input, ec)) {
        if (entry.is_regular_file() && has_image_extension(entry.path()))
            files.push_back(entry.path().string());
    }
    if (ec) return fail_io("cannot list " + opt.input);
    if (files.empty()) return fail_io("no PNG or JPEG files in " + opt.input);
    std::sort(files.begin(), files.end());

    // Work is pulled from a shared counter; rows land at their file's
    // position, so output order never depends on the job count.
    std::vector<BatchRow> rows(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= files.size()) break;
            rows[i] = analyze_one(files[i], opt);
        }
    };
    const unsigned workers = std::max(1u, jobs);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& thread : pool) thread.join();

    std::ostringstream out;
    out << "path,index,total_edge_pixels,rows,cols,status\n";
    for (const BatchRow& row : rows) {
        out << csv_field(row.path) << ',' << row.index << ',' << row.total << ','
            << opt.rows << ',' << opt.cols << ',' << row.status << '\n';
    }
    const std::string rendered = out.str();
    if (!opt.out.empty() && !write_text_file(opt.out, rendered))
        return fail_io("cannot write batch table to " + opt.out);
    std::cout << rendered;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantifies how unevenly particles are distributed in an image: "
                 "edges are detected, thinned to unit width, tallied per grid "
                 "cell, and summarized as an inequality index in [0,1] "
                 "(0 even, 1 fully concentrated)."};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 3 input/output failure, "
               "4 no edges detected, 5 invalid parameters.");

    PipelineOptions analyze_opt;
    std::string analyze_format = "json";
    std::string save_edge_map;
    std::string save_binary_map;
    CLI::App* analyze =
        app.add_subcommand("analyze", "Segregation index of one image on one grid");
    analyze->add_option("--input", analyze_opt.input, "Image to analyze (PNG or JPEG)")
        ->required();
    analyze->add_option("--out", analyze_opt.out,
                        "Report path (default: <input>.report.<format>)");
    analyze->add_option("--rows", analyze_opt.rows, "Grid rows")->capture_default_str();
    analyze->add_option("--cols", analyze_opt.cols, "Grid columns")
        ->capture_default_str();
    add_detector_flags(analyze, analyze_opt);
    analyze->add_option("--edge-map", analyze_opt.edge_map,
                        "Grayscale PNG of edge strengths to use instead of the "
                        "built-in detector; size must match the input");
    analyze->add_option("--format", analyze_format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    analyze->add_option("--save-edge-map", save_edge_map,
                        "Also write the edge-strength map as a grayscale PNG");
    analyze->add_option("--save-binary-map", save_binary_map,
                        "Also write the thinned binary edge map as a PNG");

    PipelineOptions sweep_opt;
    unsigned max_rows = 8;
    unsigned max_cols = 8;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Index across every grid from 1x1 up to max-rows x max-cols");
    sweep->add_option("--input", sweep_opt.input, "Image to analyze (PNG or JPEG)")
        ->required();
    sweep->add_option("--out", sweep_opt.out,
                      "Table path (default: <input>.sweep.csv)");
    sweep->add_option("--max-rows", max_rows, "Largest row count")
        ->capture_default_str();
    sweep->add_option("--max-cols", max_cols, "Largest column count")
        ->capture_default_str();
    add_detector_flags(sweep, sweep_opt);
    sweep->add_option("--edge-map", sweep_opt.edge_map,
                      "Grayscale PNG of edge strengths to use instead of the "
                      "built-in detector; size must match the input");

    seg_synth_spec spec = seg_default_synth_spec();
    std::string synth_out;
    std::string layout_flag = "uniform";
    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a deterministic synthetic particle image");
    synth->footer("Indices are most reliable for particle counts between 20 and 300;"
                  " a note is printed outside that range.");
    synth->add_option("--out", synth_out, "Output PNG path")->required();
    synth->add_option("--layout", layout_flag, "Particle layout")
        ->check(CLI::IsMember({"uniform", "clustered", "separated"}))
        ->capture_default_str();
    synth->add_option("--count", spec.particle_count, "Number of particles")
        ->capture_default_str();
    synth->add_option("--seed", spec.seed, "Random seed; fully determines the image")
        ->capture_default_str();
    synth->add_option("--clusters", spec.cluster_count,
                      "Cluster count (clustered layout)")
        ->capture_default_str();
    synth->add_option("--spread", spec.cluster_spread,
                      "Cluster standard deviation in pixels (clustered layout)")
        ->capture_default_str();
    synth->add_option("--rmin", spec.radius_min, "Smallest particle radius")
        ->capture_default_str();
    synth->add_option("--rmax", spec.radius_max, "Largest particle radius")
        ->capture_default_str();
    synth->add_option("--width", spec.width, "Image width")->capture_default_str();
    synth->add_option("--height", spec.height, "Image height")->capture_default_str();
    synth->add_option("--fraction", spec.species_fraction,
                      "Share of small-radius particles (separated layout)")
        ->capture_default_str();
    synth->add_option("--background", spec.background_level, "Background gray level")
        ->capture_default_str();
    synth->add_option("--foreground", spec.particle_level, "Particle gray level")
        ->capture_default_str();

    PipelineOptions batch_opt;
    unsigned jobs = 1;
    CLI::App* batch = app.add_subcommand(
        "batch", "Analyze every PNG and JPEG in a directory with shared settings");
    batch->add_option("--input", batch_opt.input, "Directory of images")->required();
    batch->add_option("--out", batch_opt.out,
                      "Also write the CSV here (always printed to stdout)");
    batch->add_option("--rows", batch_opt.rows, "Grid rows")->capture_default_str();
    batch->add_option("--cols", batch_opt.cols, "Grid columns")->capture_default_str();
    add_detector_flags(batch, batch_opt);
    batch->add_option("--jobs", jobs, "Images analyzed concurrently")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (*analyze) return run_analyze(analyze_opt, analyze_format, save_edge_map,
                                     save_binary_map);
    if (*sweep) return run_sweep(sweep_opt, max_rows, max_cols);
    if (*synth) {
        if (layout_flag == "clustered") spec.layout = SEG_LAYOUT_CLUSTERED;
        else if (layout_flag == "separated") spec.layout = SEG_LAYOUT_SEPARATED;
        else spec.layout = SEG_LAYOUT_UNIFORM;
        return run_synth(spec, synth_out);
    }
    if (*batch) return run_batch(batch_opt, jobs);
    return kExitInvalid;
}
