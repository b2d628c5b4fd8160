/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef OWSN_H
#define OWSN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OwsnLinkKind {
  OWSN_LINK_KIND_INTRA_PLANE = 0,
  OWSN_LINK_KIND_INTER_PLANE = 1,
  OWSN_LINK_KIND_CROSSING = 2,
} OwsnLinkKind;

typedef enum OwsnStatus {
  OWSN_STATUS_OK = 0,
  OWSN_STATUS_NULL_POINTER = 1,
  OWSN_STATUS_INVALID_ARGUMENT = 2,
  // Required links broken or no latency crossover.
  OWSN_STATUS_INFEASIBLE = 3,
  // Ground point outside the constellation's reach.
  OWSN_STATUS_COVERAGE = 4,
  OWSN_STATUS_NO_PATH = 5,
  // Output buffer too small; the required size is still reported.
  OWSN_STATUS_BUFFER_TOO_SMALL = 6,
  // A Rust panic was caught at the boundary.
  OWSN_STATUS_INTERNAL = 7,
} OwsnStatus;

typedef enum OwsnStrategy {
  OWSN_STRATEGY_PLUS_GRID = 0,
  OWSN_STRATEGY_PLUS_GRID_CROSSING = 1,
} OwsnStrategy;

// Opaque ISL graph.
typedef struct OwsnGraph OwsnGraph;

// Opaque constellation snapshot.
typedef struct OwsnSnapshot OwsnSnapshot;

typedef struct OwsnEarthModel {
  double radius_km;
  double occlusion_altitude_km;
  double mu_km3_s2;
} OwsnEarthModel;

typedef struct OwsnConstellation {
  double inclination_deg;
  double altitude_km;
  uint32_t num_planes;
  uint32_t sats_per_plane;
  uint32_t phasing_factor;
  double raan_spread_deg;
} OwsnConstellation;

// Idealized latency comparison scenario.
typedef struct OwsnUseCase {
  double altitude_km;
  double earth_radius_km;
  double per_hop_theta_deg;
  double ingress_egress_km;
  double fiber_refractive_index;
} OwsnUseCase;

typedef struct OwsnLatencyRow {
  uint32_t hops;
  double theta_deg;
  double sat_hop_distance_km;
  double sat_end_to_end_km;
  double sat_latency_ms;
  double terr_distance_km;
  double terr_latency_ms;
} OwsnLatencyRow;

typedef struct OwsnSatId {
  uint32_t plane;
  uint32_t slot;
} OwsnSatId;

typedef struct OwsnSatellite {
  struct OwsnSatId id;
  double position_km[3];
  double velocity_km_s[3];
  bool ascending;
} OwsnSatellite;

typedef struct OwsnEdge {
  struct OwsnSatId a;
  struct OwsnSatId b;
  enum OwsnLinkKind kind;
  double distance_km;
} OwsnEdge;

typedef struct OwsnRoute {
  struct OwsnSatId ingress;
  struct OwsnSatId egress;
  size_t isl_hops;
  double uplink_km;
  double downlink_km;
  double satellite_km;
  double satellite_latency_ms;
  double terrestrial_km;
  double terrestrial_latency_ms;
} OwsnRoute;

typedef struct OwsnContactWindow {
  double geometric_start_s;
  double start_s;
  double end_s;
  double min_distance_km;
  double max_abs_doppler_hz;
} OwsnContactWindow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *owsn_version(void);

// Reason for the last failed call on this thread; empty if none.
// The pointer stays valid until the next failing call on the same thread.
const char *owsn_last_error_message(void);

// # Safety
// `out` must be valid for a write.
enum OwsnStatus owsn_chord_distance(double theta_deg, double radius_km, double *out);

// # Safety
// `out` must be valid for a write.
enum OwsnStatus owsn_arc_distance(double theta_deg, double radius_km, double *out);

// # Safety
// `out` must be valid for a write.
enum OwsnStatus owsn_fiber_speed(double refractive_index, double *out);

// Earth model preset by name: `visibility` or `use-case`.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be valid for a write.
enum OwsnStatus owsn_earth_preset(const char *name, struct OwsnEarthModel *out);

// # Safety
// `earth` must point to a valid model; `out` must be valid for a write.
enum OwsnStatus owsn_max_isl_range(double altitude_km,
                                   const struct OwsnEarthModel *earth,
                                   double *out);

// Constellation preset by name, e.g. `starlink-phase1-modified`.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be valid for a write.
enum OwsnStatus owsn_constellation_preset(const char *name, struct OwsnConstellation *out);

// The default latency comparison scenario (550 km, 5.45 deg per hop, 1,100 km ground legs, n = 1.4675).
struct OwsnUseCase owsn_use_case_default(void);

// Rows 1..=`max_hops` of the satellite vs fiber comparison.
// `count` receives `max_hops`; fails with `BUFFER_TOO_SMALL` if `capacity` is less.
//
// # Safety
// `scenario` must be valid; `out` must hold `capacity` rows; `count` must be valid for a write.
enum OwsnStatus owsn_latency_table(const struct OwsnUseCase *scenario,
                                   uint32_t max_hops,
                                   struct OwsnLatencyRow *out,
                                   size_t capacity,
                                   size_t *count);

// # Safety
// `scenario` must be valid; `hops` and `terrestrial_km` must be valid for writes.
enum OwsnStatus owsn_crossover(const struct OwsnUseCase *scenario,
                               uint32_t *hops,
                               double *terrestrial_km);

// # Safety
// `spec` and `earth` must be valid; `out` must be valid for a write.
// Release the handle with [`owsn_snapshot_free`].
enum OwsnStatus owsn_snapshot_new(const struct OwsnConstellation *spec,
                                  const struct OwsnEarthModel *earth,
                                  double time_s,
                                  struct OwsnSnapshot **out);

// # Safety
// `snapshot` must come from [`owsn_snapshot_new`] and not be freed twice. NULL is ignored.
void owsn_snapshot_free(struct OwsnSnapshot *snapshot);

// Number of satellites; 0 for NULL.
//
// # Safety
// `snapshot` must be a live handle or NULL.
size_t owsn_snapshot_len(const struct OwsnSnapshot *snapshot);

// Satellite `index` in plane-major order.
//
// # Safety
// `snapshot` must be a live handle; `out` must be valid for a write.
enum OwsnStatus owsn_snapshot_get(const struct OwsnSnapshot *snapshot,
                                  size_t index,
                                  struct OwsnSatellite *out);

// Builds the ISL graph for a snapshot. `terminal` may be NULL for no terminal range limit.
//
// # Safety
// `snapshot` must be a live handle; `terminal` NULL or NUL-terminated; `out` valid for a write.
// Release the handle with [`owsn_graph_free`].
enum OwsnStatus owsn_graph_build(const struct OwsnSnapshot *snapshot,
                                 enum OwsnStrategy strategy,
                                 const char *terminal,
                                 struct OwsnGraph **out);

// # Safety
// `graph` must come from [`owsn_graph_build`] and not be freed twice. NULL is ignored.
void owsn_graph_free(struct OwsnGraph *graph);

// Number of links; 0 for NULL.
//
// # Safety
// `graph` must be a live handle or NULL.
size_t owsn_graph_edge_count(const struct OwsnGraph *graph);

// # Safety
// `graph` must be a live handle; `out` must be valid for a write.
enum OwsnStatus owsn_graph_edge(const struct OwsnGraph *graph, size_t index, struct OwsnEdge *out);

// Shortest total-distance path between two satellites. Returns `NO_PATH` when unreachable.
// `hops` receives the number of links on the path; either out-pointer may be NULL.
//
// # Safety
// `graph` must be a live handle; non-NULL out-pointers must be valid for writes.
enum OwsnStatus owsn_graph_shortest_path(const struct OwsnGraph *graph,
                                         struct OwsnSatId from,
                                         struct OwsnSatId to,
                                         double *distance_km,
                                         size_t *hops);

// Ground-to-ground route: nearest satellite at each end, shortest ISL path,
// and the fiber great-circle comparison. `min_elevation_deg` < 0 disables the elevation mask.
//
// # Safety
// `graph` and `snapshot` must be live handles built together; `scenario` valid; `out` valid for a write.
enum OwsnStatus owsn_route(const struct OwsnGraph *graph,
                           const struct OwsnSnapshot *snapshot,
                           const struct OwsnUseCase *scenario,
                           double from_lat_deg,
                           double from_lon_deg,
                           double to_lat_deg,
                           double to_lon_deg,
                           double min_elevation_deg,
                           struct OwsnRoute *out);

// Doppler shift in Hz seen by `b` for a carrier sent from `a` at the snapshot epoch.
//
// # Safety
// `snapshot` must be a live handle; `out` must be valid for a write.
enum OwsnStatus owsn_doppler_shift(const struct OwsnSnapshot *snapshot,
                                   struct OwsnSatId a,
                                   struct OwsnSatId b,
                                   double carrier_hz,
                                   double *out);

// Point-ahead angle in radians at the snapshot epoch.
//
// # Safety
// `snapshot` must be a live handle; `out` must be valid for a write.
enum OwsnStatus owsn_point_ahead_angle(const struct OwsnSnapshot *snapshot,
                                       struct OwsnSatId a,
                                       struct OwsnSatId b,
                                       double *out);

// Contact windows between `a` and `b` over `[0, horizon_s]`, sampled every `step_s`.
// `count` receives the number of windows; fails with `BUFFER_TOO_SMALL` if `capacity` is less.
//
// # Safety
// `spec` and `earth` must be valid; `out` must hold `capacity` entries; `count` valid for a write.
enum OwsnStatus owsn_contact_windows(const struct OwsnConstellation *spec,
                                     const struct OwsnEarthModel *earth,
                                     struct OwsnSatId a,
                                     struct OwsnSatId b,
                                     double horizon_s,
                                     double step_s,
                                     double setup_time_s,
                                     struct OwsnContactWindow *out,
                                     size_t capacity,
                                     size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OWSN_H */
