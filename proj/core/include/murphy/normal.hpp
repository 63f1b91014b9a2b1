#ifndef MURPHY_NORMAL_HPP
#define MURPHY_NORMAL_HPP

namespace murphy {

// Standard normal density.
double norm_pdf(double x);

// Standard normal distribution function, computed as erfc(-x/sqrt(2))/2.
// Accurate to a few ulp over the whole real line.
double norm_cdf(double x);

// Standard normal quantile function. Rational approximation of
// Wichura (1988), algorithm AS 241 (PPND16); relative error below 1e-15
// in the interior. Throws invalid_input for p outside (0,1).
double norm_quantile(double p);

}  // namespace murphy

#endif
