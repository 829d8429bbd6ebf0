#pragma once

#include <cmath>
#include <random>

#include "atugv/cell_network.hpp"
#include "atugv/planner.hpp"

namespace fixtures {

inline atugv::GraphDescription four_cell(double radius = 0.1, double arm = 0.25) {
    atugv::GraphDescription d;
    d.layers = {{1, 2, 3}, {4}};
    d.neighbors = {{4, {1, 2, 3}}};
    d.cell_radius = radius;
    d.arm_length = arm;
    return d;
}

inline atugv::GraphDescription seven_cell(double radius = 0.05, double arm = 0.3) {
    atugv::GraphDescription d;
    d.layers = {{1, 2, 3}, {4}, {5, 6, 7}};
    d.neighbors = {{4, {1, 2, 3}}, {5, {1, 2, 4}}, {6, {2, 3, 4}}, {7, {1, 3, 4}}};
    d.cell_radius = radius;
    d.arm_length = arm;
    return d;
}

// Final coordinates of the bundled seven-cell scenario.
inline atugv::GeneralizedCoordinates simulation_final() { return {0.9, 0.8, 0.707, 0.3, 1.0, 1.0}; }
// Final coordinates of the bundled four-cell scenario.
inline atugv::GeneralizedCoordinates experiment_final() { return {0.9, 0.8, 0.2, 0.15, 1.0, 1.0}; }

inline atugv::PlanSpec simulation_plan(atugv::BlendKind blend = atugv::BlendKind::Smoothstep) {
    return {0.0, 10.0, atugv::GeneralizedCoordinates::identity(), simulation_final(), blend};
}

inline atugv::PlanSpec experiment_plan(atugv::BlendKind blend = atugv::BlendKind::Smoothstep) {
    return {0.0, 20.0, atugv::GeneralizedCoordinates::identity(), experiment_final(), blend};
}

inline atugv::GeneralizedCoordinates random_coordinates(std::mt19937_64& rng, double min_strain = 1e-3) {
    std::uniform_real_distribution<double> strain(min_strain, 1.0);
    std::uniform_real_distribution<double> angle(-4.0, 4.0);
    std::uniform_real_distribution<double> shift(-5.0, 5.0);
    return {strain(rng), strain(rng), angle(rng), angle(rng), shift(rng), shift(rng)};
}

}  // namespace fixtures
