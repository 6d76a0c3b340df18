#pragma once

#include <optional>

#include "regmod/collection.hpp"
#include "regmod/schedule.hpp"

namespace regmod {

// =============================================================================
// Set-valued maps between Euclidean factors
// =============================================================================

/// Range points are tuples of factor points; the range norm is the max of the
/// factor norms (a single block for scalar-valued maps).
using RangePoint = std::vector<Vec>;

double range_distance(const RangePoint& a, const RangePoint& b);

enum class MapModulusKind { kMapSemi, kMapSub, kMapReg };

const char* to_string(MapModulusKind k);

class SetValuedMap {
  public:
    /// p: R -> R with coefficients in ascending degree (degree <= 3);
    /// F(x) = {p(x)}, based at (xbar, p(xbar)).
    static SetValuedMap single_valued_poly(std::vector<double> coeffs, double xbar);

    /// F(x) = (Omega_1 - x) x ... x (Omega_m - x), based at (base point, 0).
    static SetValuedMap from_collection(SetCollection coll);

    /// A plane graph oracle read as the graph of a scalar map.
    static SetValuedMap graph_oracle(const SetOracle& graph, double xbar);

    /// d(y, F(x)) in the range norm.
    double forward_distance(const Vec& x, const RangePoint& y) const;

    /// d(x, F^{-1}(y)); +inf exactly when the preimage is empty.
    double inverse_distance(const Vec& x, const RangePoint& y) const;

    const Vec& base_x() const { return xbar_; }
    const RangePoint& base_y() const { return ybar_; }
    int domain_dim() const { return domain_dim_; }
    int range_blocks() const { return range_blocks_; }
    int block_dim() const { return block_dim_; }

    const SetCollection* backing_collection() const {
        return coll_ ? &*coll_ : nullptr;
    }
    const std::vector<double>* polynomial() const {
        return poly_.empty() ? nullptr : &poly_;
    }

  private:
    SetValuedMap() = default;

    std::vector<double> poly_;        // nonempty: scalar polynomial map
    std::optional<SetCollection> coll_;  // engaged: product-of-translates map
    Vec xbar_;
    RangePoint ybar_;
    int domain_dim_ = 1;
    int range_blocks_ = 1;
    int block_dim_ = 1;
};

struct MapModulusEstimate {
    MapModulusKind kind = MapModulusKind::kMapSub;
    double q = 1.0;
    std::vector<std::pair<double, double>> trace;
    double value = 0.0;
    bool infinite = false;
    Verdict verdict = Verdict::kInconclusive;
    double uncertainty = 0.0;
    std::string annotation;
};

/// Shrinking-scale infimum of the map inequality quotient (image points for
/// the semi form, domain points for the error-bound form, pairs for the full
/// form), classified like the collection moduli.
MapModulusEstimate map_modulus(const SetValuedMap& map, double q, MapModulusKind kind,
                               const RadiusSchedule& cfg);

SetValuedMap collection_to_map(const SetCollection& coll);

/// Two plane sets: the graph of the map and the horizontal line through the
/// base image. Defined for polynomial-backed maps of degree <= 2.
SetCollection map_to_collection(const SetValuedMap& map);

struct BridgeBound {
    double lower = 0.0;
    double upper = kInf;
    bool ok = false;
};

struct BridgeReport {
    double q = 1.0;
    MapModulusEstimate map_semi, map_sub, map_reg;
    ModulusEstimate coll_semi, coll_sub, coll_reg;
    BridgeBound semi, sub, reg;  // collection constant vs map-derived bounds
};

/// Estimates the three map constants and the three constants of the derived
/// two-set collection and checks each against the sandwich
/// F/(F + 2^q) <= C <= F/2^q within combined uncertainty.
BridgeReport bridge_check(const SetValuedMap& map, double q, const RadiusSchedule& cfg);

}  // namespace regmod
