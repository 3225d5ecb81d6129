#pragma once

// Function-representation contract shared by every module: a function on
// {-1,+1}^n with a declared range, backed either by an explicit 2^n table
// (exact mode, n <= 24) or by a deterministic evaluation oracle.
//
// The two Boolean ranges {-1,1} and {0,1} are first class and never
// converted silently; spectral and influence formulas state which one they
// assume. Real range exists for hypercontractivity sweeps.

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "noiselab/config.hpp"

namespace noiselab {

enum class Range { PM1, ZO, Real };

inline constexpr int kMaxExactArity = 24;

class BitFunction {
  public:
    using Oracle = std::function<double(const Configuration&)>;

    BitFunction() = default;

    static BitFunction from_table(int n, Range range, std::vector<double> table,
                                  std::string name = "") {
        if (n < 1) throw std::invalid_argument("BitFunction: arity must be >= 1");
        if (n > kMaxExactArity)
            throw std::invalid_argument("BitFunction: exact mode capped at n <= 24");
        if (table.size() != (std::size_t(1) << n))
            throw std::invalid_argument("BitFunction: table length must be 2^n");
        BitFunction f;
        f.n_ = n;
        f.range_ = range;
        f.table_ = std::make_shared<std::vector<double>>(std::move(table));
        f.name_ = std::move(name);
        f.check_range();
        return f;
    }

    static BitFunction from_oracle(int n, Range range, Oracle oracle,
                                   std::string name = "") {
        if (n < 1) throw std::invalid_argument("BitFunction: arity must be >= 1");
        BitFunction f;
        f.n_ = n;
        f.range_ = range;
        f.oracle_ = std::move(oracle);
        f.name_ = std::move(name);
        return f;
    }

    int arity() const { return n_; }
    Range range() const { return range_; }
    bool exact() const { return table_ != nullptr; }
    const std::string& name() const { return name_; }

    const std::vector<double>& table() const {
        if (!table_) throw std::logic_error("BitFunction: oracle backing has no table");
        return *table_;
    }

    double operator()(const Configuration& omega) const {
        if (omega.arity() != n_)
            throw std::invalid_argument("BitFunction: arity mismatch");
        if (table_) return (*table_)[static_cast<std::size_t>(omega.mask())];
        return oracle_(omega);
    }

    // exact-mode fast path; mask bit i set <=> x_i = +1
    double at(std::uint32_t mask) const { return (*table_)[mask]; }

    std::size_t table_size() const { return std::size_t(1) << n_; }

    // Materialize an oracle into a table (n <= 24).
    BitFunction materialize() const {
        if (table_) return *this;
        if (n_ > kMaxExactArity)
            throw std::invalid_argument("BitFunction: cannot materialize beyond n = 24");
        std::vector<double> t(table_size());
        for (std::uint32_t m = 0; m < t.size(); ++m)
            t[m] = oracle_(Configuration(n_, m));
        return from_table(n_, range_, std::move(t), name_);
    }

    BitFunction to_pm1() const {
        if (range_ == Range::PM1) return *this;
        if (range_ == Range::Real)
            throw std::invalid_argument("to_pm1: real-valued function has no Boolean range");
        return map_values([](double v) { return 2.0 * v - 1.0; }, Range::PM1);
    }

    BitFunction to_zo() const {
        if (range_ == Range::ZO) return *this;
        if (range_ == Range::Real)
            throw std::invalid_argument("to_zo: real-valued function has no Boolean range");
        return map_values([](double v) { return (v + 1.0) / 2.0; }, Range::ZO);
    }

  private:
    BitFunction map_values(double (*phi)(double), Range out_range) const {
        BitFunction f;
        f.n_ = n_;
        f.range_ = out_range;
        f.name_ = name_;
        if (table_) {
            auto t = std::make_shared<std::vector<double>>(*table_);
            for (double& v : *t) v = phi(v);
            f.table_ = std::move(t);
        } else {
            Oracle base = oracle_;
            f.oracle_ = [base, phi](const Configuration& w) { return phi(base(w)); };
        }
        return f;
    }

    void check_range() const {
        if (range_ == Range::Real || !table_) return;
        for (double v : *table_) {
            bool ok = range_ == Range::PM1 ? (v == 1.0 || v == -1.0) : (v == 0.0 || v == 1.0);
            if (!ok) throw std::invalid_argument("BitFunction: table value outside declared range");
        }
    }

    int n_ = 0;
    Range range_ = Range::PM1;
    std::shared_ptr<const std::vector<double>> table_;
    Oracle oracle_;
    std::string name_;
};

inline double evaluate(const BitFunction& f, const Configuration& omega) { return f(omega); }

}  // namespace noiselab
