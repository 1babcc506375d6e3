#pragma once

#include <deque>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace hypconv {

enum class Method { fe1, rk2, rk3, rk4, ab2, ab3, ab4, be1, imid, trap };

struct StepperSpec {
  Method method = Method::fe1;
  int order = 1;
  /// Prior tendency evaluations needed: 0 for one-step methods, m-1 for AB-m.
  int history_depth = 0;
  bool is_explicit = true;

  std::string_view token() const;
};

StepperSpec stepper_spec(Method m);
/// CLI tokens: fe1 rk2 rk3 rk4 ab2 ab3 ab4 be1 imid trap.
StepperSpec stepper_by_name(std::string_view token);
/// The seven explicit methods in legend order: FE1 RK2 RK3 RK4 AB2 AB3 AB4.
std::vector<StepperSpec> explicit_steppers();

/// du/dt = f(u, t), written into `out`.
using Tendency = std::function<void(std::span<const double> u, double t, std::span<double> out)>;

/// Prior tendencies F(u^{n-m}, t^{n-m}), newest first, spaced by exactly dt.
class History {
 public:
  struct Entry {
    double time;
    std::vector<double> tendency;
  };

  History() = default;
  explicit History(std::size_t capacity) : capacity_(capacity) {}

  /// Adds the newest entry and drops the oldest beyond capacity.
  void push(double time, std::vector<double> tendency);
  void clear() { entries_.clear(); }

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Entry& operator[](std::size_t age) const { return entries_[age]; }

 private:
  std::size_t capacity_ = 3;
  std::deque<Entry> entries_;
};

/// Coefficients of a 2N-storage Runge-Kutta scheme:
///   q <- a_i q + dt f(u, t + c_i dt);  u <- u + b_i q.
struct LowStorageTableau {
  std::vector<double> a, b, c;
};

/// Williamson's three-stage third-order scheme.
const LowStorageTableau& williamson_rk3();
/// Carpenter-Kennedy five-stage fourth-order scheme (2N storage).
const LowStorageTableau& carpenter_kennedy_rk4();

/// Adams-Bashforth weights, newest first. Order 1 to 4.
std::span<const double> adams_bashforth_weights(int order);

/// Advances explicit methods in place. Owns the scratch registers, so one
/// instance serves one state size.
class ExplicitStepper {
 public:
  ExplicitStepper(StepperSpec spec, std::size_t n);

  const StepperSpec& spec() const { return spec_; }

  /// u(t) -> u(t + dt). AB methods read `hist` (which must already hold
  /// history_depth entries at spacing dt) and push F(u^n, t^n) into it.
  /// Throws std::invalid_argument when the history is short.
  void step(const Tendency& f, std::span<double> u, double t, double dt, History& hist);

 private:
  StepperSpec spec_;
  std::vector<double> k1_, k2_, reg_;
};

/// Functional form: returns the new state and leaves `hist` updated.
std::vector<double> step_explicit(std::span<const double> u, double t, double dt,
                                  const Tendency& f, const StepperSpec& spec, History& hist);

/// Closed-form implicit step for u' = -lambda u + f(t) with BE1, IMID or TRAP.
double step_implicit_scalar_linear(double u, double t, double dt, double lambda,
                                   const std::function<double(double)>& forcing, Method method);

enum class BootstrapMode { exact_solution, rk_startup };

/// History for an AB method starting at t0.
///
/// exact_solution evaluates the tendency on exact(t0 - m dt) for
/// m = 1..depth; rk_startup integrates RK4 backward from u0 to obtain the
/// same past states approximately.
History bootstrap_history(const Tendency& f, const StepperSpec& spec, std::span<const double> u0,
                          double t0, double dt, BootstrapMode mode,
                          const std::function<std::vector<double>(double)>& exact = {});

}  // namespace hypconv
