#include "atugv/cell_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

namespace atugv {

namespace {

std::string list(const std::vector<CellId>& cells) {
    std::ostringstream out;
    out << '{';
    for (std::size_t k = 0; k < cells.size(); ++k) {
        out << (k ? "," : "") << cells[k];
    }
    out << '}';
    return out.str();
}

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace

CellGraph CellGraph::build(const GraphDescription& d) {
    if (!(d.cell_radius > 0.0) || !std::isfinite(d.cell_radius)) {
        fail(ErrorCode::InvalidArgument, "cell radius must be positive and finite");
    }
    if (!(d.arm_length > 0.0) || !std::isfinite(d.arm_length)) {
        fail(ErrorCode::InvalidArgument, "arm length must be positive and finite");
    }
    if (d.layers.size() < 2) {
        fail(ErrorCode::Validation, "network needs a boundary layer and at least one interior layer");
    }
    if (d.layers[0].size() != 3) {
        fail(ErrorCode::Validation,
             "boundary layer must hold exactly 3 cells, got " + list(d.layers[0]));
    }

    CellGraph g;
    std::size_t total = 0;
    for (const auto& layer : d.layers) {
        if (layer.empty()) fail(ErrorCode::Validation, "layers must be non-empty");
        total += layer.size();
    }
    g.layer_of_.assign(total, -1);
    for (std::size_t l = 0; l < d.layers.size(); ++l) {
        for (CellId cell : d.layers[l]) {
            if (cell < 1 || static_cast<std::size_t>(cell) > total) {
                fail(ErrorCode::Validation, "layers must cover cells 1.." + std::to_string(total) +
                                                " exactly; found cell " + std::to_string(cell));
            }
            if (g.layer_of_[cell - 1] != -1) {
                fail(ErrorCode::Validation,
                     "layers must be disjoint; cell " + std::to_string(cell) + " repeats");
            }
            g.layer_of_[cell - 1] = static_cast<int>(l);
        }
    }
    g.layers_ = d.layers;
    g.cell_radius_ = d.cell_radius;
    g.arm_length_ = d.arm_length;

    for (const auto& [cell, _] : d.neighbors) {
        if (!g.contains(cell)) {
            fail(ErrorCode::Validation, "neighbor list given for unknown cell " + std::to_string(cell));
        }
        if (g.layer_of(cell) == 0) {
            fail(ErrorCode::Validation,
                 "boundary cell " + std::to_string(cell) + " must not list neighbors");
        }
    }

    for (std::size_t l = 1; l < g.layers_.size(); ++l) {
        for (CellId cell : g.layers_[l]) {
            const auto found = d.neighbors.find(cell);
            if (found == d.neighbors.end()) {
                fail(ErrorCode::DegreeViolation,
                     "interior cell " + std::to_string(cell) + " has no neighbor set");
            }
            std::vector<CellId> nbrs = found->second;
            std::sort(nbrs.begin(), nbrs.end());
            const bool distinct = std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end();
            if (nbrs.size() != 3 || !distinct) {
                fail(ErrorCode::DegreeViolation, "interior cell " + std::to_string(cell) +
                                                     " must have exactly 3 distinct neighbors, got " +
                                                     list(found->second));
            }
            for (CellId j : nbrs) {
                if (!g.contains(j)) {
                    fail(ErrorCode::Validation, "cell " + std::to_string(cell) +
                                                    " lists unknown neighbor " + std::to_string(j));
                }
                if (g.layer_of(j) >= static_cast<int>(l)) {
                    fail(ErrorCode::LayeringViolation,
                         "cell " + std::to_string(cell) + " in layer " + std::to_string(l) +
                             " lists neighbor " + std::to_string(j) + " from layer " +
                             std::to_string(g.layer_of(j)) + "; neighbors must lie in earlier layers");
                }
            }
            g.neighbors_[cell] = {nbrs[0], nbrs[1], nbrs[2]};

            std::array<CellId, 2> actuated{nbrs[0], nbrs[1]};
            if (const auto sel = d.actuated.find(cell); sel != d.actuated.end()) {
                std::vector<CellId> chosen = sel->second;
                std::sort(chosen.begin(), chosen.end());
                if (chosen.size() != 2 || chosen[0] == chosen[1] ||
                    !std::includes(nbrs.begin(), nbrs.end(), chosen.begin(), chosen.end())) {
                    fail(ErrorCode::Validation, "actuated joints of cell " + std::to_string(cell) +
                                                    " must be two of its neighbors " + list(nbrs) +
                                                    ", got " + list(sel->second));
                }
                actuated = {chosen[0], chosen[1]};
            }
            g.actuated_[cell] = actuated;
        }
    }
    for (const auto& [cell, _] : d.actuated) {
        if (!g.contains(cell) || g.layer_of(cell) == 0) {
            fail(ErrorCode::Validation,
                 "actuated joints given for non-interior cell " + std::to_string(cell));
        }
    }

    g.powered_.assign(total, false);
    if (d.powered) {
        for (CellId cell : *d.powered) {
            if (!g.contains(cell)) {
                fail(ErrorCode::Validation, "powered set names unknown cell " + std::to_string(cell));
            }
            g.powered_[cell - 1] = true;
        }
    } else {
        for (std::size_t l = 0; l + 1 < g.layers_.size(); ++l) {
            for (CellId cell : g.layers_[l]) g.powered_[cell - 1] = true;
        }
    }
    for (CellId cell = 1; cell <= g.cell_count(); ++cell) {
        if (!g.powered_[cell - 1] && g.layer_of(cell) == 0) {
            fail(ErrorCode::Validation, "boundary cell " + std::to_string(cell) +
                                            " must be powered; unpowered cells need actuated neighbors");
        }
    }

    for (const auto& [joint, length] : d.joint_arm_lengths) {
        const auto [cell, nbr] = joint;
        if (!g.contains(cell) || g.layer_of(cell) == 0) {
            fail(ErrorCode::Validation, "arm length override for non-interior cell " + std::to_string(cell));
        }
        const auto& n = g.neighbors_.at(cell);
        if (std::find(n.begin(), n.end(), nbr) == n.end()) {
            fail(ErrorCode::Validation, "arm length override for non-joint (" + std::to_string(cell) +
                                            "," + std::to_string(nbr) + ")");
        }
        if (!(length > 0.0) || !std::isfinite(length)) {
            fail(ErrorCode::InvalidArgument, "arm lengths must be positive and finite");
        }
    }
    g.joint_arm_lengths_ = d.joint_arm_lengths;
    return g;
}

int CellGraph::layer_of(CellId cell) const {
    if (!contains(cell)) throw Error(ErrorCode::InvalidArgument, "unknown cell " + std::to_string(cell));
    return layer_of_[cell - 1];
}

bool CellGraph::is_powered(CellId cell) const {
    if (!contains(cell)) throw Error(ErrorCode::InvalidArgument, "unknown cell " + std::to_string(cell));
    return powered_[cell - 1];
}

const std::array<CellId, 3>& CellGraph::neighbors(CellId cell) const {
    const auto it = neighbors_.find(cell);
    if (it == neighbors_.end()) {
        throw Error(ErrorCode::InvalidArgument, "cell " + std::to_string(cell) + " is not interior");
    }
    return it->second;
}

const std::array<CellId, 2>& CellGraph::actuated_neighbors(CellId cell) const {
    const auto it = actuated_.find(cell);
    if (it == actuated_.end()) {
        throw Error(ErrorCode::InvalidArgument, "cell " + std::to_string(cell) + " is not interior");
    }
    return it->second;
}

CellId CellGraph::free_neighbor(CellId cell) const {
    const auto& act = actuated_neighbors(cell);
    for (CellId j : neighbors(cell)) {
        if (j != act[0] && j != act[1]) return j;
    }
    return 0;  // unreachable for a validated graph
}

double CellGraph::arm_length(CellId cell, CellId neighbor) const {
    const auto it = joint_arm_lengths_.find({cell, neighbor});
    return it == joint_arm_lengths_.end() ? arm_length_ : it->second;
}

std::vector<CellId> CellGraph::interior_cells() const {
    std::vector<CellId> out;
    for (std::size_t l = 1; l < layers_.size(); ++l) {
        out.insert(out.end(), layers_[l].begin(), layers_[l].end());
    }
    return out;
}

std::vector<CellId> CellGraph::powered_cells() const {
    std::vector<CellId> out;
    for (CellId cell = 1; cell <= cell_count(); ++cell) {
        if (powered_[cell - 1]) out.push_back(cell);
    }
    return out;
}

std::vector<CellId> CellGraph::unpowered_cells() const {
    std::vector<CellId> out;
    for (const auto& layer : layers_) {
        for (CellId cell : layer) {
            if (!powered_[cell - 1]) out.push_back(cell);
        }
    }
    return out;
}

LayeredNetwork build_layered_network(const CellGraph& graph) {
    LayeredNetwork net;
    const int last = graph.layer_count() - 1;
    std::vector<CellId> previous;
    for (int l = 0; l <= last; ++l) {
        NetworkLayer layer;
        const auto& own = graph.layer(l);
        if (l == 0 || l == last) {
            layer.neurons = own;
        } else {
            layer.neurons = previous;
            layer.neurons.insert(layer.neurons.end(), own.begin(), own.end());
        }
        if (l > 0) {
            const std::set<CellId> available(previous.begin(), previous.end());
            for (CellId cell : layer.neurons) {
                std::vector<CellId> in;
                if (graph.layer_of(cell) == l) {
                    const auto& n = graph.neighbors(cell);
                    in.assign(n.begin(), n.end());
                } else {
                    in = {cell};
                }
                for (CellId j : in) {
                    if (!available.contains(j)) {
                        throw Error(ErrorCode::LayeringViolation,
                                    "neuron " + std::to_string(cell) + " of layer " + std::to_string(l) +
                                        " reads cell " + std::to_string(j) +
                                        " which is not a neuron of layer " + std::to_string(l - 1));
                    }
                }
                layer.inputs.emplace(cell, std::move(in));
            }
        }
        previous = layer.neurons;
        net.layers.push_back(std::move(layer));
    }
    return net;
}

PairDistance closest_pair(std::span<const Vec2> positions) {
    PairDistance best{std::numeric_limits<double>::infinity(), 0, 0};
    for (std::size_t i = 0; i < positions.size(); ++i) {
        for (std::size_t j = i + 1; j < positions.size(); ++j) {
            const double dist = distance(positions[i], positions[j]);
            if (dist < best.distance) {
                best = {dist, static_cast<CellId>(i + 1), static_cast<CellId>(j + 1)};
            }
        }
    }
    return best;
}

double min_separation(const ReferenceConfiguration& config) {
    return closest_pair(config.positions).distance;
}

ReferenceConfiguration solve_reference_positions(const CellGraph& graph, double side_length,
                                                 const Anchor& anchor) {
    if (!(side_length > 0.0) || !std::isfinite(side_length)) {
        throw Error(ErrorCode::InvalidArgument, "side length must be positive and finite");
    }
    ReferenceConfiguration config;
    config.positions.assign(static_cast<std::size_t>(graph.cell_count()), Vec2{});

    const double h = anchor.heading;
    const double third = std::numbers::pi / 3.0;
    const auto& boundary = graph.layer(0);
    config.positions[boundary[0] - 1] = anchor.origin;
    config.positions[boundary[1] - 1] =
        anchor.origin + side_length * Vec2{std::cos(h), std::sin(h)};
    config.positions[boundary[2] - 1] =
        anchor.origin + side_length * Vec2{std::cos(h + third), std::sin(h + third)};

    for (CellId cell : graph.interior_cells()) {
        Vec2 sum{};
        for (CellId j : graph.neighbors(cell)) sum += config.position(j);
        config.positions[cell - 1] = (1.0 / 3.0) * sum;
    }

    const PairDistance closest = closest_pair(config.positions);
    config.d_min = closest.distance;
    if (!(config.d_min > 2.0 * graph.cell_radius())) {
        std::ostringstream msg;
        msg << "cells " << closest.first << " and " << closest.second << " are " << closest.distance
            << " m apart in the reference configuration; need more than 2r = "
            << 2.0 * graph.cell_radius();
        throw Error(ErrorCode::ReferenceOverlap, msg.str());
    }
    return config;
}

}  // namespace atugv
