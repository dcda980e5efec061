/* Thick polygonal knots: thickness, diagrams, Reidemeister sweeps, lifted
 * graphs and ropelength tightening behind a plain C interface.
 *
 * Conventions
 *   Every fallible call returns tk_status. TK_OK is zero; on failure the
 *   out-parameters are left untouched and tk_last_error() describes the
 *   failure on the calling thread.
 *   Objects are opaque handles released with their *_free function; free
 *   functions accept NULL.
 *   Strings returned through char** are NUL-terminated UTF-8 JSON (or CSV)
 *   owned by the caller and released with tk_string_free.
 *   JSON doubles are printed at full round-trip precision; infinite levels
 *   are written as the strings "inf" and "-inf".
 *   Handles are immutable after construction and may be shared between
 *   threads for reading. */
#ifndef THICKKNOT_THICKKNOT_H
#define THICKKNOT_THICKKNOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(THICKKNOT_BUILDING)
#define TK_API __declspec(dllexport)
#else
#define TK_API __declspec(dllimport)
#endif
#else
#define TK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tk_status {
  TK_OK = 0,
  TK_ERR_INVALID_ARGUMENT = 1,
  TK_ERR_INVALID_POLYGON = 2,
  TK_ERR_DEGENERATE_ANGLE = 3,
  TK_ERR_NO_CRITICAL_CHORD = 4,
  TK_ERR_NOT_REGULAR = 5,
  TK_ERR_INVALID_DIAGRAM = 6,
  TK_ERR_INVALID_SITE = 7,
  TK_ERR_BUDGET_EXCEEDED = 8,
  TK_ERR_DEGENERATE = 9,
  TK_ERR_DEGENERATE_EVENT = 10,
  TK_ERR_INCONSISTENT_EVENT = 11,
  TK_ERR_LEVEL_NOT_SAMPLED = 12,
  TK_ERR_PARSE = 13,
  TK_ERR_IO = 14,
  TK_ERR_OUT_OF_MEMORY = 15,
  TK_ERR_INTERNAL = 16
} tk_status;

typedef struct tk_polygon tk_polygon;
typedef struct tk_family tk_family;
typedef struct tk_graph tk_graph;

/* ---- library ---------------------------------------------------------- */

TK_API const char* tk_version(void);
/* Stable error kind name such as "NotRegular"; "Ok" for TK_OK. */
TK_API const char* tk_status_name(tk_status status);
/* Message of the last failure on this thread; "" after a success. */
TK_API const char* tk_last_error(void);
TK_API void tk_string_free(char* s);

/* ---- polygons --------------------------------------------------------- */

/* {"vertices": [[x, y, z], ...]} or a bare vertex array. The polygon must
 * be embedded (no repeated vertices, no intersecting edges). */
TK_API tk_status tk_polygon_from_json(const char* json, tk_polygon** out);
TK_API tk_status tk_polygon_from_coords(const double* xyz, size_t n_vertices, tk_polygon** out);
/* shape: "regular" (regular n-gon of circumradius 1), "trefoil" (torus
 * trefoil sampled at n points) or "perturbed" (regular n-gon with seeded
 * uniform vertex offsets of at most amplitude times the edge length). */
TK_API tk_status tk_polygon_builtin(const char* shape, int n, double amplitude, uint64_t seed, tk_polygon** out);
TK_API void tk_polygon_free(tk_polygon* p);
TK_API size_t tk_polygon_size(const tk_polygon* p);
/* Copies min(capacity, 3 * size) coordinates into xyz. */
TK_API tk_status tk_polygon_coords(const tk_polygon* p, double* xyz, size_t capacity);
TK_API tk_status tk_polygon_to_json(const tk_polygon* p, char** out);

typedef struct tk_thickness_report {
  double min_rad;
  double dcsd;      /* +inf when no doubly critical chord exists */
  double thickness; /* min(min_rad, dcsd / 2) */
  double length;
  double ropelength; /* length / thickness */
} tk_thickness_report;

TK_API tk_status tk_thickness(const tk_polygon* p, tk_thickness_report* out);

/* Regularity of the projection along dir (normalized internally) and, when
 * regular, the diagram: {"direction", "regular", "failure", "crossings",
 * "min_transversality_angle", ..., "diagram": {...}}. */
TK_API tk_status tk_project_json(const tk_polygon* p, const double dir[3], char** out);

/* ---- diagrams --------------------------------------------------------- */

/* diagram_text is a PD text ("X a b c d" lines), a canonical key, or one of
 * "empty", "unknot", "trefoil", "3_1", "figure-eight", "4_1", "curl+",
 * "curl-", "bigon". Writes {"key", "crossings", "writhe", "determinant",
 * "pd", "mirror_key", "moves": [...]}. */
TK_API tk_status tk_diagram_json(const char* diagram_text, char** out);
/* Rooted typed ball of the given radius; budget 0 selects the default. */
TK_API tk_status tk_ball_json(const char* diagram_text, int radius, size_t budget, char** out);

/* ---- families and sweeps ---------------------------------------------- */

/* A family object {"name", "direction", "paths": [...]} or one path object
 * {"id", "keyframes": [[[x, y, z], ...], ...]}. */
TK_API tk_status tk_family_from_json(const char* json, tk_family** out);
/* name: "curl", "push-over", "trigon", "two-cluster", "three-cluster",
 * "recognition", "constant". The seed only affects "recognition". */
TK_API tk_status tk_family_builtin(const char* name, uint64_t seed, tk_family** out);
TK_API void tk_family_free(tk_family* f);
TK_API size_t tk_family_path_count(const tk_family* f);
TK_API tk_status tk_family_direction(const tk_family* f, double dir[3]);
TK_API tk_status tk_family_to_json(const tk_family* f, char** out);

typedef struct tk_sweep_options {
  double step;   /* grid spacing in the path parameter, in (0, 1] */
  double t_tol;  /* bracket width of each event */
  double lambda; /* admissibility level; +inf disables the check */
  size_t jobs;   /* worker threads, 0 for one per core */
} tk_sweep_options;

TK_API void tk_sweep_options_default(tk_sweep_options* opt);

/* Sweeps every path of the family along dir (the family direction when dir
 * is NULL): {"direction", "paths": [{"path_id", "events", "samples", ...}]}. */
TK_API tk_status tk_sweep_json(const tk_family* f, const double dir[3], const tk_sweep_options* opt, char** out);

/* ---- lifted graphs ---------------------------------------------------- */

TK_API tk_status tk_graph_build(const tk_family* f, const double dir[3], const tk_sweep_options* opt,
                                tk_graph** out);
TK_API void tk_graph_free(tk_graph* g);

typedef struct tk_graph_levels {
  double lowest;      /* smallest sampled level */
  double ideal_level; /* levels up to this one count as ideal */
  double top;         /* largest sampled level */
  size_t grid_size;
} tk_graph_levels;

TK_API tk_status tk_graph_levels_get(const tk_graph* g, tk_graph_levels* out);
/* Lifted Reidemeister graph at level lambda (resolved down to the sampled
 * grid; +inf gives the full graph). */
TK_API tk_status tk_graph_json(const tk_graph* g, double lambda, char** out);
/* {"lambda", "resolved", "radius", "diameter", "profile", "components"}. */
TK_API tk_status tk_growth_json(const tk_graph* g, double lambda, char** out);
TK_API tk_status tk_merge_tree_json(const tk_graph* g, char** out);
/* Visibility of ball(root, radius) and of ball(root, r) for each of the
 * n_radii extra radii. mirror_either != 0 also accepts mirror images. */
TK_API tk_status tk_recognize_json(const tk_graph* g, const char* root_text, int radius, const int* radii,
                                   size_t n_radii, int mirror_either, size_t budget, char** out);

/* ---- tightening ------------------------------------------------------- */

typedef struct tk_anneal_config {
  uint64_t seed;
  int64_t iterations;
  double initial_step;    /* fraction of the mean edge length */
  double temperature;     /* fraction of the starting ropelength */
  double ratio;           /* geometric cooling factor per iteration */
  double freeze;          /* relative temperature below which only descents pass */
  double thickness_slack;
  int restarts;
  size_t jobs;
  int64_t trace_every;    /* 0 disables the trace */
} tk_anneal_config;

TK_API void tk_anneal_config_default(tk_anneal_config* cfg);

/* Anneals p. Writes the best polygon (unit thickness) to *out, a JSON
 * report with one entry per restart to *report and, when trace_csv is not
 * NULL, the trace of the winning run as CSV. */
TK_API tk_status tk_tighten(const tk_polygon* p, const tk_anneal_config* cfg, tk_polygon** out, char** report,
                            char** trace_csv);

#ifdef __cplusplus
}
#endif

#endif /* THICKKNOT_THICKKNOT_H */
