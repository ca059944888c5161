#pragma once

#include "ldp/orlicz_function.hpp"

namespace ldp {

/// Tilted measure nu_{s,t}(dx) proportional to exp(s V(x) + t x^2) on D_V.
struct TiltedOrliczMeasure {
    OrliczFunction v;
    double s = -1.0;
    double t = 0.0;
    double log_z = 0.0;
};

/// log of integral of exp(s V(x) + t x^2) over D_V; +inf when divergent.
double orlicz_log_partition(const OrliczFunction& v, double s, double t);

TiltedOrliczMeasure make_tilted_orlicz(const OrliczFunction& v, double s, double t);

/// Moments of nu_{s,t}.
double orlicz_moment_V(const OrliczFunction& v, double s, double t);
double orlicz_moment_2(const OrliczFunction& v, double s, double t);

/// Per-dimension limit of the log-volume of the Orlicz ball:
/// -sup_{s<0} { s - log of integral of e^{s V} }.
double orlicz_log_volume(const OrliczFunction& v);

/// Two-parameter conjugate J(u,v) = sup_{s<0, t} { su + tv - log Z(s,t) }.
/// Throws Diverging outside the attainable moment cone.
double orlicz_J(const OrliczFunction& v, double u, double vv);

struct OrliczCenter {
    double bstar = 0.0;  // unique b > 0 with M_V(mu_{V,b}) = 1
    double m = 0.0;      // sqrt(M_2(mu_{V,b*}))
};
OrliczCenter orlicz_bstar(const OrliczFunction& v);

/// Norm rate J_{X,V}(z) = J(1, z^2) + log-volume per dimension.
double orlicz_rate(const OrliczFunction& v, double z);

}  // namespace ldp
