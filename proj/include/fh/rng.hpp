#pragma once

#include "fh/types.hpp"

#include <cmath>
#include <cstdint>

namespace fh {

/// SplitMix64 generator. Explicitly seeded, no global state, bitwise
/// reproducible for a given seed, which is what the randomized decision
/// procedures and the CLI --seed contract rely on.
class SplitMix64
{
  public:
	explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

	std::uint64_t next()
	{
		std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
		z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
		z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
		return z ^ (z >> 31);
	}

	/// Uniform double in [0, 1) with 53 random bits.
	double uniform() { return double(next() >> 11) * 0x1.0p-53; }

	/// Uniform double in [lo, hi).
	double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

	/// Standard normal via Box-Muller; the paired value is cached.
	double normal()
	{
		if (has_cached_)
		{
			has_cached_ = false;
			return cached_;
		}
		double u1 = 0.0;
		while (u1 <= 0.0)
			u1 = uniform();
		double u2 = uniform();
		double r = std::sqrt(-2.0 * std::log(u1));
		double phi = 2.0 * M_PI * u2;
		cached_ = r * std::sin(phi);
		has_cached_ = true;
		return r * std::cos(phi);
	}

	/// Complex standard normal, E|z|^2 = 1.
	Complex complex_normal()
	{
		double re = normal();
		double im = normal();
		return Complex(re * M_SQRT1_2, im * M_SQRT1_2);
	}

	CMatrix complex_gaussian_matrix(Index rows, Index cols)
	{
		CMatrix a(rows, cols);
		for (Index j = 0; j < cols; ++j)
			for (Index i = 0; i < rows; ++i)
				a(i, j) = complex_normal();
		return a;
	}

  private:
	std::uint64_t state_;
	double cached_ = 0.0;
	bool has_cached_ = false;
};

} // namespace fh
