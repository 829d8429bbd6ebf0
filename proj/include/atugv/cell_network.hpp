#pragma once

// Cell identities, the layered interconnection network and the reference
// configuration.
//
// Cells are numbered 1..N. Layer 0 holds the three boundary cells; every
// other (interior) cell has exactly three neighbors, all in strictly earlier
// layers, so reference positions can be placed layer by layer.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "atugv/error.hpp"
#include "atugv/geometry.hpp"

namespace atugv {

// Unvalidated graph input, typically straight from a scenario file.
struct GraphDescription {
    std::vector<std::vector<CellId>> layers;
    std::map<CellId, std::vector<CellId>> neighbors;
    // Optional N_i' selection per interior cell (two of its neighbors).
    std::map<CellId, std::vector<CellId>> actuated;
    // Defaults to every cell outside the last layer.
    std::optional<std::vector<CellId>> powered;
    double cell_radius = 0.0;
    double arm_length = 0.0;
    // Per-joint arm length overrides keyed by (cell, neighbor).
    std::map<std::pair<CellId, CellId>, double> joint_arm_lengths;
};

class CellGraph {
public:
    // Validates every structural invariant. Throws DegreeViolation,
    // LayeringViolation, InvalidArgument (radius/arm length) or Validation.
    static CellGraph build(const GraphDescription& description);

    int cell_count() const { return static_cast<int>(layer_of_.size()); }
    int layer_count() const { return static_cast<int>(layers_.size()); }
    const std::vector<CellId>& layer(int index) const { return layers_.at(index); }
    const std::vector<std::vector<CellId>>& layers() const { return layers_; }
    int layer_of(CellId cell) const;

    bool contains(CellId cell) const { return cell >= 1 && cell <= cell_count(); }
    bool is_interior(CellId cell) const { return layer_of(cell) > 0; }
    bool is_powered(CellId cell) const;

    const std::array<CellId, 3>& neighbors(CellId cell) const;
    const std::array<CellId, 2>& actuated_neighbors(CellId cell) const;
    CellId free_neighbor(CellId cell) const;

    double cell_radius() const { return cell_radius_; }
    double arm_length() const { return arm_length_; }
    double arm_length(CellId cell, CellId neighbor) const;

    // In layer order, so each cell's neighbors precede it.
    std::vector<CellId> interior_cells() const;
    std::vector<CellId> powered_cells() const;
    std::vector<CellId> unpowered_cells() const;

private:
    CellGraph() = default;

    std::vector<std::vector<CellId>> layers_;
    std::vector<int> layer_of_;  // indexed by id - 1
    std::vector<bool> powered_;  // indexed by id - 1
    std::map<CellId, std::array<CellId, 3>> neighbors_;
    std::map<CellId, std::array<CellId, 2>> actuated_;
    std::map<std::pair<CellId, CellId>, double> joint_arm_lengths_;
    double cell_radius_ = 0.0;
    double arm_length_ = 0.0;
};

struct NetworkLayer {
    std::vector<CellId> neurons;                   // W_l
    std::map<CellId, std::vector<CellId>> inputs;  // I_{i,l}, drawn from W_{l-1}
};

struct LayeredNetwork {
    std::vector<NetworkLayer> layers;
};

// W_0 = V_0, W_last = V_last, otherwise W_l = W_{l-1} u V_l. Cells carried
// over from an earlier layer are pass-through neurons with input {i}.
LayeredNetwork build_layered_network(const CellGraph& graph);

// Placement of the boundary triangle: first boundary cell at `origin`, second
// along `heading` (radians from +x), third counter-clockwise.
struct Anchor {
    Vec2 origin{};
    double heading = 0.0;
};

struct ReferenceConfiguration {
    std::vector<Vec2> positions;  // indexed by id - 1
    double d_min = 0.0;

    Vec2 position(CellId cell) const { return positions.at(static_cast<std::size_t>(cell - 1)); }
    int cell_count() const { return static_cast<int>(positions.size()); }
};

// Throws ReferenceOverlap when the resulting d_min <= 2r.
ReferenceConfiguration solve_reference_positions(const CellGraph& graph, double side_length,
                                                 const Anchor& anchor = {});

struct PairDistance {
    double distance = 0.0;
    CellId first = 0;
    CellId second = 0;
};

// Exhaustive scan over all unordered pairs; ids are index + 1.
PairDistance closest_pair(std::span<const Vec2> positions);

double min_separation(const ReferenceConfiguration& config);

}  // namespace atugv
