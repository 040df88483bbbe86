#pragma once

#include "inscribe/curve.hpp"
#include "inscribe/distance_geometry.hpp"
#include "inscribe/simplex.hpp"

#include <iosfwd>
#include <memory>
#include <string>

namespace inscribe {

// Line-oriented key/value specifications; '#' starts a comment, unknown keys
// are rejected.  Grammars:
//
//   curve:    type ellipse | radial_fourier | polygon
//             a <num>, b <num>                        (ellipse)
//             c0 <num>, cos_coeffs <num...>, sin_coeffs <num...>  (radial_fourier)
//             vertices <x,y[,z]> <x,y[,z]> ...        (polygon; repeatable)
//
//   surface:  type sphere | radial_expr
//             radius <num>, dimension <2|3>           (sphere)
//             expr <expression in phi, theta>         (radial_expr, k = 3)
//
//   ratio:    type simplex_ratio
//             k <num>
//             rows <d00,d01,...> <d10,d11,...> ...    (k+1 rows)

std::unique_ptr<ClosedCurve> parse_curve_spec(std::istream& in);
std::unique_ptr<ClosedCurve> load_curve_spec(const std::string& path);

simplex::RadialSurface parse_surface_spec(std::istream& in);
simplex::RadialSurface load_surface_spec(const std::string& path);

SimplexDistanceRatioD parse_ratio_spec(std::istream& in);
SimplexDistanceRatioD load_ratio_spec(const std::string& path);

}  // namespace inscribe
