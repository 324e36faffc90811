#include "hpq/model.hpp"

#include <charconv>
#include <cmath>

namespace hpq {

Manifold Manifold::sphere(int n)
{
    if (n < 2)
        throw InvalidInput("sphere dimension must be >= 2, got " + std::to_string(n));
    return Manifold(ModelKind::Sphere, n);
}

Manifold Manifold::heisenberg() { return Manifold(ModelKind::Heisenberg3, 3); }
Manifold Manifold::sl2r() { return Manifold(ModelKind::SL2RUniversal, 3); }
Manifold Manifold::sphere_cross_line() { return Manifold(ModelKind::SphereCrossLine, 3); }

Manifold Manifold::parse(std::string_view text)
{
    if (text == "heisenberg" || text == "h3")
        return heisenberg();
    if (text == "sl2r")
        return sl2r();
    if (text == "s2xr")
        return sphere_cross_line();
    constexpr std::string_view prefix = "sphere:";
    if (text.starts_with(prefix)) {
        auto digits = text.substr(prefix.size());
        int n = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec != std::errc() || ptr != digits.data() + digits.size())
            throw InvalidInput("bad sphere dimension in model '" + std::string(text) + "'");
        return sphere(n);
    }
    throw InvalidInput("unknown model '" + std::string(text) + "'");
}

int Manifold::coord_dim() const
{
    switch (kind_) {
    case ModelKind::Sphere:
        return dim_ + 1;
    case ModelKind::SphereCrossLine:
        return 4;
    default:
        return 3;
    }
}

std::string Manifold::name() const
{
    switch (kind_) {
    case ModelKind::Sphere:
        return "sphere:" + std::to_string(dim_);
    case ModelKind::Heisenberg3:
        return "heisenberg";
    case ModelKind::SL2RUniversal:
        return "sl2r";
    case ModelKind::SphereCrossLine:
        return "s2xr";
    }
    return {};
}

Point::Point(Manifold model, Vec coords) : model_(model), coords_(std::move(coords))
{
    if (coords_.size() != model_.coord_dim())
        throw InvalidInput("point for " + model_.name() + " needs " + std::to_string(model_.coord_dim()) +
                           " coordinates, got " + std::to_string(coords_.size()));
    if (!coords_.allFinite())
        throw DomainError("non-finite point coordinates");

    switch (model_.kind()) {
    case ModelKind::Sphere: {
        const double r = coords_.norm();
        if (r == 0.0)
            throw DomainError("cannot project the origin onto the sphere");
        coords_ /= r;
        break;
    }
    case ModelKind::SphereCrossLine: {
        const double r = coords_.head<3>().norm();
        if (r == 0.0)
            throw DomainError("cannot project the origin onto the sphere factor");
        coords_.head<3>() /= r;
        break;
    }
    case ModelKind::SL2RUniversal:
        if (!(coords_[2] > 0.0))
            throw DomainError("sl2r points need z > 0");
        break;
    case ModelKind::Heisenberg3:
        break;
    }
}

namespace {

double normal_component(const Point &x, const Vec &v)
{
    switch (x.model().kind()) {
    case ModelKind::Sphere:
        return x.coords().dot(v);
    case ModelKind::SphereCrossLine:
        return x.coords().head<3>().dot(v.head<3>());
    default:
        return 0.0;
    }
}

} // namespace

TangentVector::TangentVector(Point base, Vec comps) : base_(std::move(base)), comps_(std::move(comps))
{
    if (comps_.size() != base_.model().coord_dim())
        throw InvalidInput("tangent vector has wrong number of components");
    const double off = std::abs(normal_component(base_, comps_));
    if (off > kTangencyTolerance * std::max(1.0, comps_.norm()))
        throw InvalidInput("vector is not tangent to " + base_.model().name() + " (normal part " +
                           std::to_string(off) + ")");
}

Mat Frame::matrix() const
{
    Mat m(base.model().coord_dim(), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i)
        m.col(static_cast<Eigen::Index>(i)) = vectors[i].comps();
    return m;
}

Mat tangent_projector(const Point &x)
{
    const int d = x.model().coord_dim();
    Mat p = Mat::Identity(d, d);
    switch (x.model().kind()) {
    case ModelKind::Sphere:
        p -= x.coords() * x.coords().transpose();
        break;
    case ModelKind::SphereCrossLine: {
        Vec nu = Vec::Zero(4);
        nu.head<3>() = x.coords().head<3>();
        p -= nu * nu.transpose();
        break;
    }
    default:
        break;
    }
    return p;
}

} // namespace hpq
