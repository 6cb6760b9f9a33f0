#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "strikeplan/ball.hpp"
#include "strikeplan/planner.hpp"

namespace strikeplan::trajectory {

/// Unreadable file or malformed CSV.
struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failed to create or write an output file.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kSampleStep = 1e-3;  ///< s between CSV rows

/// States at a 1 ms cadence starting at `initial`. The final sample is the
/// first grid point at or past `duration`, so the returned span always
/// covers the requested interval.
std::vector<BallState> sample(const BallState& initial, double duration,
                              const PhysicsParams& params);

/// Writes rows as "t,x,y,z,vx,vy,vz,wx,wy,wz" with 9 significant digits.
void write_csv(const std::filesystem::path& path,
               std::span<const BallState> rows);

/// Reads a file produced by write_csv. Validates the header and column
/// count; throws CsvError on any mismatch.
std::vector<BallState> read_csv(const std::filesystem::path& path);

struct Landing {
    double t;  ///< interpolated table-contact time
    BallState state;
};

/// Locates the first descending z = 0 crossing in sampled rows by linear
/// interpolation between the straddling pair. Rows that start at z = 0
/// (a serve or bounce) do not count; the ball must come down from above.
std::optional<Landing> replay_landing(std::span<const BallState> rows);

struct ExportPaths {
    std::filesystem::path pre;   ///< pre_impact.csv
    std::filesystem::path post;  ///< post_impact.csv
};

/// Writes pre_impact.csv (bounce to strike) and post_impact.csv (strike to
/// just past landing, so replay_landing can interpolate the contact) into
/// `dir`, creating it if needed. The plan must be feasible.
ExportPaths export_trajectories(const std::filesystem::path& dir,
                                const BallState& incoming,
                                const planner::PlanResult& plan,
                                const PhysicsParams& params);

}  // namespace strikeplan::trajectory
