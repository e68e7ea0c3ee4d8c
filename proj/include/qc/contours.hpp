#ifndef QC_CONTOURS_HPP
#define QC_CONTOURS_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qc/directional.hpp"

namespace qc {

enum class ContourKind { Halfspace, Radial };

// Closed planar polygon at quantile level tau, optionally conditioned on a
// covariate value. Halfspace contours are convex and strictly
// counterclockwise; radial contours are star-shaped about `center`.
struct Contour {
    std::vector<Eigen::Vector2d> vertices;  // counterclockwise, not repeated
    double tau = 0.5;
    std::optional<double> at_x;
    ContourKind kind = ContourKind::Halfspace;
    std::optional<Eigen::Vector2d> center;  // radial kind only
};

// Intersection of the upper halfspaces { y : u'y - b_y*gamma'y >= offset(x0) }
// over all fits (which must share tau in (0, 0.5)). Throws EmptyIntersection
// when no common point remains and UnboundedRegion when the effective
// constraint normals do not surround the plane.
Contour halfspace_intersection(const std::vector<DirectionalFit>& fits, double x0);

// Same, for fits with no covariate term; x0 is ignored in the offsets and
// the contour carries no conditioning value.
Contour halfspace_intersection(const std::vector<DirectionalFit>& fits);

Eigen::Vector2d componentwise_median(const std::vector<Eigen::Vector2d>& cloud);

// Coverage-tau contour around the componentwise median: split the circle into
// n_angles equal bins, take the empirical tau-quantile of the center distances
// in each bin as the vertex radius at the bin's central angle. Throws
// EmptyAngleBin when a bin holds no points.
Contour radial_contour(const std::vector<Eigen::Vector2d>& cloud, double tau, int n_angles);

// Fraction of points inside or on the polygon.
double coverage(const Contour& contour, const std::vector<Eigen::Vector2d>& points);

bool point_in_polygon(const std::vector<Eigen::Vector2d>& polygon, const Eigen::Vector2d& p);

}  // namespace qc

#endif  // QC_CONTOURS_HPP
