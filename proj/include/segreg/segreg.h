/* segreg - particle segregation index from digital images.
 *
 * C API of the segreg shared library. All objects are opaque handles
 * created and destroyed by the library; every fallible call returns a
 * seg_status and leaves a human-readable message in seg_last_error()
 * (thread-local) when it fails.
 */

#ifndef SEGREG_H
#define SEGREG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SEGREG_API __declspec(dllexport)
#else
#define SEGREG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum seg_status {
    SEG_OK = 0,
    SEG_ERR_FILE_NOT_FOUND = 1,
    SEG_ERR_UNSUPPORTED_FORMAT = 2,
    SEG_ERR_CORRUPT_IMAGE = 3,
    SEG_ERR_DIMENSION_MISMATCH = 4,
    SEG_ERR_EMPTY_IMAGE = 5,
    SEG_ERR_GRID_TOO_FINE = 6,
    SEG_ERR_NO_EDGES = 7,
    SEG_ERR_INVALID_SPEC = 8,
    SEG_ERR_INVALID_ARGUMENT = 9,
    SEG_ERR_IO = 10,
    SEG_ERR_INTERNAL = 11
} seg_status;

/* Grayscale image (8-bit), edge-strength map in [0,1], binary edge map,
 * single-grid segregation report, grid-sweep table. */
typedef struct seg_image seg_image;
typedef struct seg_edge_map seg_edge_map;
typedef struct seg_binary_map seg_binary_map;
typedef struct seg_report seg_report;
typedef struct seg_sweep seg_sweep;

/* Parameters of the built-in gradient edge detector. The thresholds are
 * fractions of the maximum gradient magnitude, 0 < low < high < 1. */
typedef struct seg_detector_params {
    double gaussian_sigma;
    double low_threshold;
    double high_threshold;
} seg_detector_params;

typedef enum seg_layout {
    SEG_LAYOUT_UNIFORM = 0,
    SEG_LAYOUT_CLUSTERED = 1,
    SEG_LAYOUT_SEPARATED = 2
} seg_layout;

/* Specification of a synthetic particle image. cluster_count/cluster_spread
 * apply to SEG_LAYOUT_CLUSTERED, species_fraction to SEG_LAYOUT_SEPARATED. */
typedef struct seg_synth_spec {
    uint32_t width;
    uint32_t height;
    uint32_t particle_count;
    uint32_t radius_min;
    uint32_t radius_max;
    seg_layout layout;
    uint32_t cluster_count;
    double cluster_spread;
    double species_fraction;
    uint64_t seed;
    uint8_t background_level;
    uint8_t particle_level;
} seg_synth_spec;

SEGREG_API const char* seg_version(void);
SEGREG_API const char* seg_status_name(seg_status status);
/* Message describing the most recent failure on this thread. */
SEGREG_API const char* seg_last_error(void);

SEGREG_API seg_detector_params seg_default_detector_params(void);
SEGREG_API seg_synth_spec seg_default_synth_spec(void);

/* ---- images ---- */

/* Decode a PNG or JPEG file to 8-bit grayscale. */
SEGREG_API seg_status seg_image_load(const char* path, seg_image** out);
SEGREG_API seg_status seg_image_from_pixels(uint32_t width, uint32_t height,
                                            const uint8_t* data, seg_image** out);
SEGREG_API seg_status seg_image_write_png(const seg_image* image, const char* path);
SEGREG_API uint32_t seg_image_width(const seg_image* image);
SEGREG_API uint32_t seg_image_height(const seg_image* image);
/* Row-major luminance values, width*height bytes. */
SEGREG_API const uint8_t* seg_image_pixels(const seg_image* image);
SEGREG_API void seg_image_free(seg_image* image);

/* ---- edge detection ---- */

SEGREG_API seg_status seg_detect_edges(const seg_image* image,
                                       const seg_detector_params* params,
                                       seg_edge_map** out);
/* Read an edge-probability map from an 8-bit grayscale PNG (strength =
 * value/255). Fails with SEG_ERR_DIMENSION_MISMATCH when the file's size
 * differs from the expected one. */
SEGREG_API seg_status seg_edge_map_import(const char* path, uint32_t expected_width,
                                          uint32_t expected_height, seg_edge_map** out);
/* Write as 8-bit grayscale PNG, value = round(strength*255). */
SEGREG_API seg_status seg_edge_map_export(const seg_edge_map* map, const char* path);
SEGREG_API uint32_t seg_edge_map_width(const seg_edge_map* map);
SEGREG_API uint32_t seg_edge_map_height(const seg_edge_map* map);
/* Row-major strengths in [0,1], width*height floats. */
SEGREG_API const float* seg_edge_map_values(const seg_edge_map* map);
SEGREG_API void seg_edge_map_free(seg_edge_map* map);

/* ---- binarization and thinning ---- */

/* pixel = 1 iff strength >= threshold, threshold in (0,1). */
SEGREG_API seg_status seg_binarize(const seg_edge_map* map, double threshold,
                                   seg_binary_map** out);
/* Thin foreground strokes to unit width; 8-connectivity of the foreground
 * components is preserved. */
SEGREG_API seg_status seg_thin(const seg_binary_map* map, seg_binary_map** out);
/* Write as 8-bit grayscale PNG, foreground 255 on background 0. */
SEGREG_API seg_status seg_binary_map_export(const seg_binary_map* map, const char* path);
SEGREG_API uint32_t seg_binary_map_width(const seg_binary_map* map);
SEGREG_API uint32_t seg_binary_map_height(const seg_binary_map* map);
/* Row-major values, each exactly 0 or 1. */
SEGREG_API const uint8_t* seg_binary_map_values(const seg_binary_map* map);
SEGREG_API void seg_binary_map_free(seg_binary_map* map);

/* ---- grid measurement and the segregation index ---- */

/* Crop the map to rows*cols equal cells (top-left anchored) and count
 * foreground pixels per cell into cell_lengths (rows*cols entries,
 * row-major). */
SEGREG_API seg_status seg_split_and_measure(const seg_binary_map* map, uint32_t rows,
                                            uint32_t cols, uint64_t* cell_lengths);
/* Gini-style segregation index of a per-cell edge-length vector: 0 for an
 * all-equal vector, 1 when a single cell holds everything. Fails with
 * SEG_ERR_NO_EDGES when the vector sums to zero. */
SEGREG_API seg_status seg_gini_index(const uint64_t* y, size_t n, double* out);

/* ---- pipeline ---- */

/* Full pipeline: detect (or take an imported map), binarize, thin, split,
 * index. Fails with SEG_ERR_NO_EDGES when the thinned map has no
 * foreground inside the grid region. */
SEGREG_API seg_status seg_evaluate(const seg_image* image, uint32_t rows, uint32_t cols,
                                   const seg_detector_params* params,
                                   double binarize_threshold, seg_report** out);
SEGREG_API seg_status seg_evaluate_map(const seg_edge_map* map, uint32_t rows,
                                       uint32_t cols, double binarize_threshold,
                                       seg_report** out);
SEGREG_API double seg_report_index(const seg_report* report);
SEGREG_API uint32_t seg_report_rows(const seg_report* report);
SEGREG_API uint32_t seg_report_cols(const seg_report* report);
SEGREG_API uint64_t seg_report_total_edge_pixels(const seg_report* report);
/* rows*cols per-cell edge lengths, row-major. */
SEGREG_API const uint64_t* seg_report_cell_lengths(const seg_report* report);
SEGREG_API void seg_report_free(seg_report* report);

/* Evaluate every grid (1..max_rows) x (1..max_cols) over one shared
 * detection pass. Cells whose grid region holds no edges are marked, not
 * zeroed; seg_sweep_value reports them as SEG_ERR_NO_EDGES. */
SEGREG_API seg_status seg_sweep_run(const seg_image* image, uint32_t max_rows,
                                    uint32_t max_cols, const seg_detector_params* params,
                                    double binarize_threshold, seg_sweep** out);
SEGREG_API seg_status seg_sweep_run_map(const seg_edge_map* map, uint32_t max_rows,
                                        uint32_t max_cols, double binarize_threshold,
                                        seg_sweep** out);
SEGREG_API uint32_t seg_sweep_max_rows(const seg_sweep* sweep);
SEGREG_API uint32_t seg_sweep_max_cols(const seg_sweep* sweep);
/* rows/cols are 1-based. Returns SEG_OK and stores the index, or
 * SEG_ERR_NO_EDGES for a marked cell. */
SEGREG_API seg_status seg_sweep_value(const seg_sweep* sweep, uint32_t rows,
                                      uint32_t cols, double* out);
SEGREG_API void seg_sweep_free(seg_sweep* sweep);

/* ---- synthetic ground truth ---- */

/* Deterministic for a fixed spec (seed included). */
SEGREG_API seg_status seg_synth_generate(const seg_synth_spec* spec, seg_image** out);

#ifdef __cplusplus
}
#endif

#endif /* SEGREG_H */
