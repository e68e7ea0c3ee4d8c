#include "qc/contours.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qc/errors.hpp"
#include "qc/stats.hpp"

namespace qc {

namespace {

struct Halfplane {
    Eigen::Vector2d normal;  // unit; region is normal'y >= offset
    double offset;
    double angle;            // atan2 of normal, in [0, 2pi)
};

double wrap_angle(double a) {
    const double two_pi = 2.0 * M_PI;
    double t = std::fmod(a, two_pi);
    if (t < 0.0) t += two_pi;
    return t;
}

std::vector<Eigen::Vector2d> clip_halfplane(const std::vector<Eigen::Vector2d>& poly,
                                            const Halfplane& h) {
    std::vector<Eigen::Vector2d> out;
    out.reserve(poly.size() + 1);
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const Eigen::Vector2d& a = poly[i];
        const Eigen::Vector2d& b = poly[(i + 1) % m];
        const double da = h.normal.dot(a) - h.offset;
        const double db = h.normal.dot(b) - h.offset;
        if (da >= 0.0) out.push_back(a);
        if ((da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0)) {
            const double t = da / (da - db);
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

// Drop repeated points and collinear turns; the clipped polygon keeps its
// counterclockwise orientation.
std::vector<Eigen::Vector2d> tidy_polygon(std::vector<Eigen::Vector2d> poly) {
    double scale = 1.0;
    for (const auto& v : poly) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    const double len_tol = 1e-10 * scale;
    const double cross_tol = 1e-12 * scale * scale;

    std::vector<Eigen::Vector2d> dedup;
    for (const auto& v : poly) {
        if (dedup.empty() || (v - dedup.back()).cwiseAbs().maxCoeff() > len_tol) dedup.push_back(v);
    }
    while (dedup.size() > 1 && (dedup.front() - dedup.back()).cwiseAbs().maxCoeff() <= len_tol)
        dedup.pop_back();
    if (dedup.size() < 3) return dedup;

    std::vector<Eigen::Vector2d> out;
    const size_t m = dedup.size();
    for (size_t i = 0; i < m; ++i) {
        const Eigen::Vector2d& prev = dedup[(i + m - 1) % m];
        const Eigen::Vector2d& cur = dedup[i];
        const Eigen::Vector2d& next = dedup[(i + 1) % m];
        const Eigen::Vector2d e1 = cur - prev;
        const Eigen::Vector2d e2 = next - cur;
        const double cross = e1.x() * e2.y() - e1.y() * e2.x();
        if (cross > cross_tol) out.push_back(cur);
    }
    return out;
}

}  // namespace

Contour halfspace_intersection(const std::vector<DirectionalFit>& fits, double x0) {
    if (fits.size() < 3) throw InvalidArgument("need at least 3 directional fits");
    const double tau = fits.front().tau;
    for (const auto& f : fits) {
        if (std::abs(f.tau - tau) > 1e-12)
            throw InvalidArgument("halfspace intersection requires fits sharing one tau");
    }
    if (!(tau > 0.0 && tau < 0.5))
        throw InvalidArgument("halfspace contours are defined for tau in (0, 0.5)");

    std::vector<Halfplane> planes;
    planes.reserve(fits.size());
    for (const auto& f : fits) {
        const Eigen::Vector2d g = gamma_of(f.direction);
        Eigen::Vector2d normal = f.direction.u - f.b_y * g;
        const double len = normal.norm();  // sqrt(1 + b_y^2), never 0
        Halfplane h;
        h.normal = normal / len;
        h.offset = f.offset_at(x0) / len;
        h.angle = wrap_angle(std::atan2(h.normal.y(), h.normal.x()));
        planes.push_back(h);
    }

    std::sort(planes.begin(), planes.end(),
              [](const Halfplane& a, const Halfplane& b) { return a.angle < b.angle; });

    // Near-parallel constraints: keep only the tightest (largest offset).
    const double ang_tol = 1e-9;
    std::vector<Halfplane> kept;
    for (const auto& h : planes) {
        if (!kept.empty() && h.angle - kept.back().angle <= ang_tol) {
            if (h.offset > kept.back().offset) kept.back() = h;
        } else {
            kept.push_back(h);
        }
    }
    if (kept.size() > 1 && wrap_angle(kept.front().angle + 2.0 * M_PI - kept.back().angle) <= ang_tol) {
        if (kept.back().offset > kept.front().offset) kept.front() = kept.back();
        kept.pop_back();
    }

    if (kept.size() < 3)
        throw UnboundedRegion("fewer than 3 distinct constraint orientations");
    for (size_t i = 0; i < kept.size(); ++i) {
        const double next = i + 1 < kept.size() ? kept[i + 1].angle : kept.front().angle + 2.0 * M_PI;
        if (next - kept[i].angle >= M_PI - 1e-12)
            throw UnboundedRegion("constraint normals leave an open halfplane uncovered");
    }

    double dmax = 1.0;
    for (const auto& h : kept) dmax = std::max(dmax, std::abs(h.offset));
    const double big = 1e7 * dmax;
    std::vector<Eigen::Vector2d> poly = {
        {-big, -big}, {big, -big}, {big, big}, {-big, big}};

    for (const auto& h : kept) {
        poly = clip_halfplane(poly, h);
        if (poly.empty())
            throw EmptyIntersection("directional halfspaces have no common point at tau=" +
                                    std::to_string(tau));
    }

    poly = tidy_polygon(std::move(poly));
    if (poly.size() < 3)
        throw EmptyIntersection("halfspace intersection degenerated to a point or segment");
    for (const auto& v : poly) {
        if (v.cwiseAbs().maxCoeff() >= 0.99 * big)
            throw UnboundedRegion("intersection reaches the clipping box");
    }

    Contour c;
    c.vertices = std::move(poly);
    c.tau = tau;
    c.kind = ContourKind::Halfspace;
    if (fits.front().kind != CovariateKind::None) c.at_x = x0;
    return c;
}

Contour halfspace_intersection(const std::vector<DirectionalFit>& fits) {
    for (const auto& f : fits) {
        if (f.kind != CovariateKind::None)
            throw InvalidArgument("fits carry a covariate model; pass the conditioning value x0");
    }
    return halfspace_intersection(fits, 0.0);
}

Eigen::Vector2d componentwise_median(const std::vector<Eigen::Vector2d>& cloud) {
    if (cloud.empty()) throw InvalidArgument("componentwise median of empty cloud");
    std::vector<double> c1, c2;
    c1.reserve(cloud.size());
    c2.reserve(cloud.size());
    for (const auto& p : cloud) {
        c1.push_back(p.x());
        c2.push_back(p.y());
    }
    auto med = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        const size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    return {med(c1), med(c2)};
}

Contour radial_contour(const std::vector<Eigen::Vector2d>& cloud, double tau, int n_angles) {
    if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("radial contour needs tau in (0,1)");
    if (n_angles < 3) throw InvalidArgument("need at least 3 angle bins");
    if (cloud.empty()) throw InvalidArgument("radial contour of empty cloud");

    const Eigen::Vector2d center = componentwise_median(cloud);
    const double bin_width = 2.0 * M_PI / static_cast<double>(n_angles);

    std::vector<std::vector<double>> bin_radii(static_cast<size_t>(n_angles));
    for (const auto& p : cloud) {
        const Eigen::Vector2d d = p - center;
        const double ang = wrap_angle(std::atan2(d.y(), d.x()));
        int b = static_cast<int>(ang / bin_width);
        if (b >= n_angles) b = n_angles - 1;
        bin_radii[static_cast<size_t>(b)].push_back(d.norm());
    }

    Contour c;
    c.tau = tau;
    c.kind = ContourKind::Radial;
    c.center = center;
    c.vertices.reserve(static_cast<size_t>(n_angles));
    for (int b = 0; b < n_angles; ++b) {
        auto& radii = bin_radii[static_cast<size_t>(b)];
        if (radii.empty())
            throw EmptyAngleBin("no cloud points in angle bin " + std::to_string(b) + " of " +
                                std::to_string(n_angles) + "; cloud too small");
        std::sort(radii.begin(), radii.end());
        const double r = quantile_of_sorted(radii, tau);
        const double ang = (static_cast<double>(b) + 0.5) * bin_width;
        c.vertices.emplace_back(center.x() + r * std::cos(ang), center.y() + r * std::sin(ang));
    }
    return c;
}

bool point_in_polygon(const std::vector<Eigen::Vector2d>& polygon, const Eigen::Vector2d& p) {
    const size_t m = polygon.size();
    if (m < 3) return false;

    // Boundary counts as inside.
    for (size_t i = 0; i < m; ++i) {
        const Eigen::Vector2d& a = polygon[i];
        const Eigen::Vector2d& b = polygon[(i + 1) % m];
        const Eigen::Vector2d e = b - a;
        const Eigen::Vector2d w = p - a;
        const double len = e.norm();
        const double eps = 1e-9 * (1.0 + a.norm() + b.norm() + p.norm());
        if (len < eps) {
            if (w.norm() <= eps) return true;
            continue;
        }
        const double cross = e.x() * w.y() - e.y() * w.x();
        const double proj = w.dot(e) / len;
        if (std::abs(cross) / len <= eps && proj >= -eps && proj <= len + eps) return true;
    }

    bool inside = false;
    for (size_t i = 0, j = m - 1; i < m; j = i++) {
        const Eigen::Vector2d& a = polygon[i];
        const Eigen::Vector2d& b = polygon[j];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            const double x_cross = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (p.x() < x_cross) inside = !inside;
        }
    }
    return inside;
}

double coverage(const Contour& contour, const std::vector<Eigen::Vector2d>& points) {
    if (contour.vertices.size() < 3) throw InvalidArgument("contour has fewer than 3 vertices");
    if (points.empty()) throw InvalidArgument("coverage of empty point set");
    long hits = 0;
    for (const auto& p : points)
        if (point_in_polygon(contour.vertices, p)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(points.size());
}

}  // namespace qc
