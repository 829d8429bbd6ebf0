#pragma once

// CSV emission for simulation traces (and a reader for the same schema).
// Numbers are written with 9 significant digits.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "atugv/simulator.hpp"

namespace atugv {

inline constexpr const char* kTrajectoryHeader = "t,cell_id,x_des,y_des,x_act,y_act,vx_cmd,vy_cmd,err_norm";
inline constexpr const char* kElbowHeader = "t,cell_i,cell_j,theta_des,theta_act";

std::string format_number(double value);

// One row per step per cell, cells in id order. Unpowered cells leave
// vx_cmd and vy_cmd empty.
void write_trajectory_csv(std::ostream& out, const SimulationTrace& trace);

// One row per step per actuated joint.
void write_elbow_csv(std::ostream& out, const SimulationTrace& trace);

struct TrajectoryRow {
    double t = 0.0;
    CellId cell = 0;
    Vec2 desired;
    Vec2 actual;
    std::optional<Vec2> commanded;
    double error_norm = 0.0;
};

struct ElbowRow {
    double t = 0.0;
    CellId cell = 0;
    CellId neighbor = 0;
    double theta_desired = 0.0;
    double theta_actual = 0.0;
};

// Throw ParseError on a header mismatch or malformed row.
std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in);
std::vector<ElbowRow> read_elbow_csv(std::istream& in);

}  // namespace atugv
