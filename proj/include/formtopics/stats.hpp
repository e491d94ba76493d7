#ifndef FORMTOPICS_STATS_HPP
#define FORMTOPICS_STATS_HPP

namespace formtopics::stats {

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| >= |t|) of Student's t with df degrees
/// of freedom, computed as I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_sided_p(double t, double df);

}  // namespace formtopics::stats

#endif
