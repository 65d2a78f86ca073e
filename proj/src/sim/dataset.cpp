#include "aurakit/sim/dataset.hpp"

namespace aurakit::sim {

namespace {

template <typename T>
bool vec_equal(const std::vector<T>& a, const std::vector<T>& b) {
    return a == b;
}

struct PayloadEq {
    const Payload& other;

    bool operator()(const analysis::Spectrum& a) const {
        const auto* b = std::get_if<analysis::Spectrum>(&other);
        return b && a.x == b->x && a.y == b->y && a.x_unit == b->x_unit;
    }
    bool operator()(const analysis::ComplexSpectrum& a) const {
        const auto* b = std::get_if<analysis::ComplexSpectrum>(&other);
        return b && a.x == b->x && a.v == b->v;
    }
    bool operator()(const analysis::GrayImage& a) const {
        const auto* b = std::get_if<analysis::GrayImage>(&other);
        return b && a.rows == b->rows && a.cols == b->cols && a.px == b->px;
    }
    bool operator()(const analysis::FloatImage& a) const {
        const auto* b = std::get_if<analysis::FloatImage>(&other);
        return b && a.rows == b->rows && a.cols == b->cols && a.px == b->px;
    }
    bool operator()(const analysis::HeightMap& a) const {
        const auto* b = std::get_if<analysis::HeightMap>(&other);
        return b && a.rows == b->rows && a.cols == b->cols && a.z == b->z;
    }
    bool operator()(const analysis::Sinogram& a) const {
        const auto* b = std::get_if<analysis::Sinogram>(&other);
        return b && a.n_angles == b->n_angles && a.n_detectors == b->n_detectors && a.v == b->v;
    }
    bool operator()(const analysis::OrientationMap& a) const {
        const auto* b = std::get_if<analysis::OrientationMap>(&other);
        return b && a.rows == b->rows && a.cols == b->cols && a.theta == b->theta;
    }
    bool operator()(const TgaCurve& a) const {
        const auto* b = std::get_if<TgaCurve>(&other);
        if (!b || a.mass.x != b->mass.x || a.mass.y != b->mass.y) return false;
        if (a.heat_flow.has_value() != b->heat_flow.has_value()) return false;
        return !a.heat_flow || (a.heat_flow->x == b->heat_flow->x &&
                                a.heat_flow->y == b->heat_flow->y);
    }
};

}  // namespace

bool dataset_equal(const Dataset& a, const Dataset& b) {
    if (a.kind != b.kind) return false;
    return std::visit(PayloadEq{b.payload}, a.payload);
}

}  // namespace aurakit::sim
