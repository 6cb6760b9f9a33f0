#include "strikeplan/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "strikeplan/flight.hpp"

namespace strikeplan::trajectory {
namespace {

constexpr const char* kHeader = "t,x,y,z,vx,vy,vz,wx,wy,wz";
constexpr double kLandingPad = 1e-2;  ///< s of post-landing samples kept

void append_field(std::string& line, double v, bool first) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    if (!first) line += ',';
    line += buf;
}

double parse_field(const std::string& cell, const std::filesystem::path& path,
                   std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw CsvError(path.string() + ":" + std::to_string(line_no) +
                       ": not a number: \"" + cell + "\"");
    }
}

}  // namespace

std::vector<BallState> sample(const BallState& initial, double duration,
                              const PhysicsParams& params) {
    if (!(duration >= 0.0) || !std::isfinite(duration)) {
        throw std::invalid_argument("sample: duration must be finite and >= 0");
    }
    const auto count = static_cast<std::size_t>(
        std::max(1.0, std::ceil(duration / kSampleStep - 1e-9)));

    std::vector<BallState> rows;
    rows.reserve(count + 1);
    BallState cur = initial;
    rows.push_back(cur);
    for (std::size_t k = 1; k <= count; ++k) {
        cur = flight::propagate(cur, kSampleStep, params);
        cur.t = initial.t + static_cast<double>(k) * kSampleStep;
        rows.push_back(cur);
    }
    return rows;
}

void write_csv(const std::filesystem::path& path,
               std::span<const BallState> rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot create " + path.string());
    out << kHeader << '\n';
    std::string line;
    for (const BallState& s : rows) {
        line.clear();
        append_field(line, s.t, true);
        append_field(line, s.pos.x, false);
        append_field(line, s.pos.y, false);
        append_field(line, s.pos.z, false);
        append_field(line, s.vel.x, false);
        append_field(line, s.vel.y, false);
        append_field(line, s.vel.z, false);
        append_field(line, s.spin.x, false);
        append_field(line, s.spin.y, false);
        append_field(line, s.spin.z, false);
        out << line << '\n';
    }
    if (!out.good()) throw IoError("failed writing " + path.string());
}

std::vector<BallState> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw CsvError(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) {
        throw CsvError(path.string() + ": expected header \"" +
                       std::string(kHeader) + "\", got \"" + line + "\"");
    }

    std::vector<BallState> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> cells;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 10) {
            throw CsvError(path.string() + ":" + std::to_string(line_no) +
                           ": expected 10 columns, got " +
                           std::to_string(cells.size()));
        }

        BallState s;
        s.t = parse_field(cells[0], path, line_no);
        s.pos = {parse_field(cells[1], path, line_no),
                 parse_field(cells[2], path, line_no),
                 parse_field(cells[3], path, line_no)};
        s.vel = {parse_field(cells[4], path, line_no),
                 parse_field(cells[5], path, line_no),
                 parse_field(cells[6], path, line_no)};
        s.spin = {parse_field(cells[7], path, line_no),
                  parse_field(cells[8], path, line_no),
                  parse_field(cells[9], path, line_no)};
        rows.push_back(s);
    }
    return rows;
}

std::optional<Landing> replay_landing(std::span<const BallState> rows) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const BallState& a = rows[i];
        const BallState& b = rows[i + 1];
        if (!(a.pos.z > 0.0) || !(b.pos.z <= 0.0)) continue;

        const double alpha = a.pos.z / (a.pos.z - b.pos.z);
        const auto lerp = [alpha](double u, double v) {
            return u + alpha * (v - u);
        };
        BallState hit;
        hit.t = lerp(a.t, b.t);
        hit.pos = {lerp(a.pos.x, b.pos.x), lerp(a.pos.y, b.pos.y),
                   lerp(a.pos.z, b.pos.z)};
        hit.vel = {lerp(a.vel.x, b.vel.x), lerp(a.vel.y, b.vel.y),
                   lerp(a.vel.z, b.vel.z)};
        hit.spin = {lerp(a.spin.x, b.spin.x), lerp(a.spin.y, b.spin.y),
                    lerp(a.spin.z, b.spin.z)};
        return Landing{hit.t, hit};
    }
    return std::nullopt;
}

ExportPaths export_trajectories(const std::filesystem::path& dir,
                                const BallState& incoming,
                                const planner::PlanResult& plan,
                                const PhysicsParams& params) {
    if (!plan.feasible) {
        throw std::invalid_argument("export_trajectories: plan is infeasible");
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    ExportPaths paths{dir / "pre_impact.csv", dir / "post_impact.csv"};

    const auto pre = sample(incoming, plan.strike.T, params);
    write_csv(paths.pre, pre);

    const double flight_time = plan.landing_state.t - plan.post_impact.t;
    const auto post = sample(plan.post_impact, flight_time + kLandingPad, params);
    write_csv(paths.post, post);
    return paths;
}

}  // namespace strikeplan::trajectory
