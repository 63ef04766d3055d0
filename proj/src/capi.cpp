#include "segreg/segreg.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "edge_detect.hpp"
#include "error.hpp"
#include "grid.hpp"
#include "image.hpp"
#include "segregation.hpp"
#include "synth.hpp"
#include "thinning.hpp"

struct seg_image {
    segreg::GrayImage img;
};

struct seg_edge_map {
    segreg::EdgeMap map;
};

struct seg_binary_map {
    segreg::BinaryEdgeMap map;
};

struct seg_report {
    segreg::SegregationReport report;
};

struct seg_sweep {
    segreg::SweepTable table;
};

namespace {

thread_local std::string g_last_error;

seg_status to_status(segreg::ErrorCode code) {
    using segreg::ErrorCode;
    switch (code) {
        case ErrorCode::FileNotFound: return SEG_ERR_FILE_NOT_FOUND;
        case ErrorCode::UnsupportedFormat: return SEG_ERR_UNSUPPORTED_FORMAT;
        case ErrorCode::CorruptImage: return SEG_ERR_CORRUPT_IMAGE;
        case ErrorCode::DimensionMismatch: return SEG_ERR_DIMENSION_MISMATCH;
        case ErrorCode::EmptyImage: return SEG_ERR_EMPTY_IMAGE;
        case ErrorCode::GridTooFine: return SEG_ERR_GRID_TOO_FINE;
        case ErrorCode::NoEdges: return SEG_ERR_NO_EDGES;
        case ErrorCode::InvalidSpec: return SEG_ERR_INVALID_SPEC;
        case ErrorCode::InvalidArgument: return SEG_ERR_INVALID_ARGUMENT;
        case ErrorCode::Io: return SEG_ERR_IO;
    }
    return SEG_ERR_INTERNAL;
}

seg_status fail_argument(const char* message) {
    g_last_error = message;
    return SEG_ERR_INVALID_ARGUMENT;
}

/// Runs fn, translating exceptions into status codes and recording the
/// message for seg_last_error().
template <typename Fn>
seg_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SEG_OK;
    } catch (const segreg::SegError& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SEG_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SEG_ERR_INTERNAL;
    }
}

segreg::DetectorParams to_detector_params(const seg_detector_params* params) {
    if (params == nullptr) return segreg::DetectorParams{};
    return segreg::DetectorParams{params->gaussian_sigma, params->low_threshold,
                                  params->high_threshold};
}

segreg::SynthSpec to_synth_spec(const seg_synth_spec& spec) {
    segreg::SynthSpec out;
    out.width = static_cast<int>(spec.width);
    out.height = static_cast<int>(spec.height);
    out.particle_count = static_cast<int>(spec.particle_count);
    out.radius_min = static_cast<int>(spec.radius_min);
    out.radius_max = static_cast<int>(spec.radius_max);
    switch (spec.layout) {
        case SEG_LAYOUT_UNIFORM: out.layout = segreg::Layout::Uniform; break;
        case SEG_LAYOUT_CLUSTERED: out.layout = segreg::Layout::Clustered; break;
        case SEG_LAYOUT_SEPARATED: out.layout = segreg::Layout::Separated; break;
        default:
            segreg::raise(segreg::ErrorCode::InvalidSpec, "unknown layout value");
    }
    out.cluster_count = static_cast<int>(spec.cluster_count);
    out.cluster_spread = spec.cluster_spread;
    out.species_fraction = spec.species_fraction;
    out.seed = spec.seed;
    out.background_level = spec.background_level;
    out.particle_level = spec.particle_level;
    return out;
}

}  // namespace

extern "C" {

const char* seg_version(void) { return "1.0.0"; }

const char* seg_status_name(seg_status status) {
    switch (status) {
        case SEG_OK: return "ok";
        case SEG_ERR_FILE_NOT_FOUND: return "file_not_found";
        case SEG_ERR_UNSUPPORTED_FORMAT: return "unsupported_format";
        case SEG_ERR_CORRUPT_IMAGE: return "corrupt_image";
        case SEG_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
        case SEG_ERR_EMPTY_IMAGE: return "empty_image";
        case SEG_ERR_GRID_TOO_FINE: return "grid_too_fine";
        case SEG_ERR_NO_EDGES: return "no_edges";
        case SEG_ERR_INVALID_SPEC: return "invalid_spec";
        case SEG_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case SEG_ERR_IO: return "io_error";
        case SEG_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* seg_last_error(void) { return g_last_error.c_str(); }

seg_detector_params seg_default_detector_params(void) {
    const segreg::DetectorParams d{};
    return seg_detector_params{d.gaussian_sigma, d.low_threshold, d.high_threshold};
}

seg_synth_spec seg_default_synth_spec(void) {
    const segreg::SynthSpec d{};
    seg_synth_spec out;
    out.width = static_cast<uint32_t>(d.width);
    out.height = static_cast<uint32_t>(d.height);
    out.particle_count = static_cast<uint32_t>(d.particle_count);
    out.radius_min = static_cast<uint32_t>(d.radius_min);
    out.radius_max = static_cast<uint32_t>(d.radius_max);
    out.layout = SEG_LAYOUT_UNIFORM;
    out.cluster_count = static_cast<uint32_t>(d.cluster_count);
    out.cluster_spread = d.cluster_spread;
    out.species_fraction = d.species_fraction;
    out.seed = d.seed;
    out.background_level = static_cast<uint8_t>(d.background_level);
    out.particle_level = static_cast<uint8_t>(d.particle_level);
    return out;
}

seg_status seg_image_load(const char* path, seg_image** out) {
    if (path == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] { *out = new seg_image{segreg::load_image(path)}; });
}

seg_status seg_image_from_pixels(uint32_t width, uint32_t height, const uint8_t* data,
                                 seg_image** out) {
    if (data == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        segreg::GrayImage img =
            segreg::make_gray(static_cast<int>(width), static_cast<int>(height));
        std::memcpy(img.data.data(), data, img.data.size());
        *out = new seg_image{std::move(img)};
    });
}

seg_status seg_image_write_png(const seg_image* image, const char* path) {
    if (image == nullptr || path == nullptr) return fail_argument("null argument");
    return guarded([&] { segreg::write_gray_png(image->img, path); });
}

uint32_t seg_image_width(const seg_image* image) {
    return image == nullptr ? 0 : static_cast<uint32_t>(image->img.width);
}

uint32_t seg_image_height(const seg_image* image) {
    return image == nullptr ? 0 : static_cast<uint32_t>(image->img.height);
}

const uint8_t* seg_image_pixels(const seg_image* image) {
    return image == nullptr ? nullptr : image->img.data.data();
}

void seg_image_free(seg_image* image) { delete image; }

seg_status seg_detect_edges(const seg_image* image, const seg_detector_params* params,
                            seg_edge_map** out) {
    if (image == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new seg_edge_map{
            segreg::detect_edges(image->img, to_detector_params(params))};
    });
}

seg_status seg_edge_map_import(const char* path, uint32_t expected_width,
                               uint32_t expected_height, seg_edge_map** out) {
    if (path == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new seg_edge_map{segreg::import_edge_map(
            path, static_cast<int>(expected_width), static_cast<int>(expected_height))};
    });
}

seg_status seg_edge_map_export(const seg_edge_map* map, const char* path) {
    if (map == nullptr || path == nullptr) return fail_argument("null argument");
    return guarded([&] { segreg::export_edge_map(map->map, path); });
}

uint32_t seg_edge_map_width(const seg_edge_map* map) {
    return map == nullptr ? 0 : static_cast<uint32_t>(map->map.width);
}

uint32_t seg_edge_map_height(const seg_edge_map* map) {
    return map == nullptr ? 0 : static_cast<uint32_t>(map->map.height);
}

const float* seg_edge_map_values(const seg_edge_map* map) {
    return map == nullptr ? nullptr : map->map.data.data();
}

void seg_edge_map_free(seg_edge_map* map) { delete map; }

seg_status seg_binarize(const seg_edge_map* map, double threshold, seg_binary_map** out) {
    if (map == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new seg_binary_map{segreg::binarize(map->map, threshold)};
    });
}

seg_status seg_thin(const seg_binary_map* map, seg_binary_map** out) {
    if (map == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] { *out = new seg_binary_map{segreg::thin(map->map)}; });
}

seg_status seg_binary_map_export(const seg_binary_map* map, const char* path) {
    if (map == nullptr || path == nullptr) return fail_argument("null argument");
    return guarded([&] { segreg::export_binary_map(map->map, path); });
}

uint32_t seg_binary_map_width(const seg_binary_map* map) {
    return map == nullptr ? 0 : static_cast<uint32_t>(map->map.width);
}

uint32_t seg_binary_map_height(const seg_binary_map* map) {
    return map == nullptr ? 0 : static_cast<uint32_t>(map->map.height);
}

const uint8_t* seg_binary_map_values(const seg_binary_map* map) {
    return map == nullptr ? nullptr : map->map.data.data();
}

void seg_binary_map_free(seg_binary_map* map) { delete map; }

seg_status seg_split_and_measure(const seg_binary_map* map, uint32_t rows, uint32_t cols,
                                 uint64_t* cell_lengths) {
    if (map == nullptr || cell_lengths == nullptr) return fail_argument("null argument");
    return guarded([&] {
        const segreg::GridSpec grid{static_cast<int>(rows), static_cast<int>(cols)};
        const segreg::CellLengths cells = segreg::split_and_measure(map->map, grid);
        std::memcpy(cell_lengths, cells.y.data(), cells.y.size() * sizeof(uint64_t));
    });
}

seg_status seg_gini_index(const uint64_t* y, size_t n, double* out) {
    if (y == nullptr || out == nullptr) return fail_argument("null argument");
    return guarded([&] { *out = segreg::gini_index({y, n}); });
}

seg_status seg_evaluate(const seg_image* image, uint32_t rows, uint32_t cols,
                        const seg_detector_params* params, double binarize_threshold,
                        seg_report** out) {
    if (image == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        const segreg::GridSpec grid{static_cast<int>(rows), static_cast<int>(cols)};
        *out = new seg_report{segreg::evaluate(image->img, grid,
                                               to_detector_params(params),
                                               binarize_threshold)};
    });
}

seg_status seg_evaluate_map(const seg_edge_map* map, uint32_t rows, uint32_t cols,
                            double binarize_threshold, seg_report** out) {
    if (map == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        const segreg::GridSpec grid{static_cast<int>(rows), static_cast<int>(cols)};
        *out = new seg_report{segreg::evaluate(map->map, grid, binarize_threshold)};
    });
}

double seg_report_index(const seg_report* report) {
    return report == nullptr ? 0.0 : report->report.index;
}

uint32_t seg_report_rows(const seg_report* report) {
    return report == nullptr ? 0 : static_cast<uint32_t>(report->report.grid.rows);
}

uint32_t seg_report_cols(const seg_report* report) {
    return report == nullptr ? 0 : static_cast<uint32_t>(report->report.grid.cols);
}

uint64_t seg_report_total_edge_pixels(const seg_report* report) {
    return report == nullptr ? 0 : report->report.total_edge_pixels;
}

const uint64_t* seg_report_cell_lengths(const seg_report* report) {
    return report == nullptr ? nullptr : report->report.cell_lengths.y.data();
}

void seg_report_free(seg_report* report) { delete report; }

seg_status seg_sweep_run(const seg_image* image, uint32_t max_rows, uint32_t max_cols,
                         const seg_detector_params* params, double binarize_threshold,
                         seg_sweep** out) {
    if (image == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new seg_sweep{segreg::sweep(image->img, static_cast<int>(max_rows),
                                           static_cast<int>(max_cols),
                                           to_detector_params(params),
                                           binarize_threshold)};
    });
}

seg_status seg_sweep_run_map(const seg_edge_map* map, uint32_t max_rows,
                             uint32_t max_cols, double binarize_threshold,
                             seg_sweep** out) {
    if (map == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new seg_sweep{segreg::sweep(map->map, static_cast<int>(max_rows),
                                           static_cast<int>(max_cols),
                                           binarize_threshold)};
    });
}

uint32_t seg_sweep_max_rows(const seg_sweep* sweep) {
    return sweep == nullptr ? 0 : static_cast<uint32_t>(sweep->table.max_rows);
}

uint32_t seg_sweep_max_cols(const seg_sweep* sweep) {
    return sweep == nullptr ? 0 : static_cast<uint32_t>(sweep->table.max_cols);
}

seg_status seg_sweep_value(const seg_sweep* sweep, uint32_t rows, uint32_t cols,
                           double* out) {
    if (sweep == nullptr || out == nullptr) return fail_argument("null argument");
    if (rows < 1 || cols < 1 ||
        rows > static_cast<uint32_t>(sweep->table.max_rows) ||
        cols > static_cast<uint32_t>(sweep->table.max_cols))
        return fail_argument("grid position out of range");
    const auto& value =
        sweep->table.at(static_cast<int>(rows), static_cast<int>(cols));
    if (!value.has_value()) {
        g_last_error = "no edge pixels in the grid region";
        return SEG_ERR_NO_EDGES;
    }
    *out = *value;
    return SEG_OK;
}

void seg_sweep_free(seg_sweep* sweep) { delete sweep; }

seg_status seg_synth_generate(const seg_synth_spec* spec, seg_image** out) {
    if (spec == nullptr || out == nullptr) return fail_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new seg_image{segreg::generate(to_synth_spec(*spec))};
    });
}

}  // extern "C"
