#pragma once

// Closed-form special functions and t -> infinity limits of the Dirichlet
// integrals that the discriminant functions converge to.

namespace propest {

/// Si(x) = integral of sin(u)/u over [0, x]. Odd in x.
double sine_integral(double x);

/// 1 inside (a, b), 1/2 at a or b, 0 outside [a, b]. Throws InvalidNull if a >= b.
double dirichlet_limit_bounded(double mu, double a, double b);

/// 1/2 above b, 0 at b, -1/2 below b.
double dirichlet_limit_onesided(double mu, double b);

/// phi-weighted bounded limit: phi(mu) inside, phi(mu)/2 at the endpoints.
double dirichlet_limit_extension(double mu, double phi_mu, double a, double b);

struct PhiStats {
    double sup_norm;   // sup of |phi| on [a, b]
    double c_mu;       // local Lipschitz-type constant of phi at mu
};

/// Upper bound on |D_phi(t, mu; a, b) - limit| for mu away from the endpoints.
/// Requires min(t * delta, t * (b - a)) >= 2 where delta is the distance from
/// mu to {a, b}; throws PreconditionViolated otherwise.
double dphi_speed_bound(double t, double mu, double a, double b, const PhiStats& phi);

}  // namespace propest
