#include "divrect/problem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace divrect {

namespace {

constexpr double kPi = std::numbers::pi;

Vec make_vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Vec constant_vec(int n, double v) { return Vec::Constant(n, v); }

// ---------------------------------------------------------------------------
// Scalable box families
// ---------------------------------------------------------------------------

ProblemSpec make_rosenbrock(int n) {
  require(n >= 2, "rosenbrock requires n >= 2");
  ProblemSpec p;
  p.name = "rosenbrock";
  p.n = n;
  p.lower = constant_vec(n, -5.0);
  p.upper = constant_vec(n, 10.0);
  p.objective = [](const Vec& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      const double b = 1.0 - x[i];
      s += 100.0 * a * a + b * b;
    }
    return s;
  };
  p.known_fstar = 0.0;
  p.known_xstar = constant_vec(n, 1.0);
  p.tags = {ProblemTag::Box};
  return p;
}

ProblemSpec make_alpine(int n) {
  ProblemSpec p;
  p.name = "alpine";
  p.n = n;
  p.lower = constant_vec(n, -6.0);
  p.upper = constant_vec(n, 10.0);
  p.objective = [](const Vec& x) {
    double s = 0.0;
    for (double xi : x) s += std::abs(xi * std::sin(xi) + 0.1 * xi);
    return s;
  };
  p.known_fstar = 0.0;
  p.known_xstar = constant_vec(n, 0.0);
  p.tags = {ProblemTag::Box, ProblemTag::Symmetric};
  return p;
}

ProblemSpec make_csendes(int n) {
  ProblemSpec p;
  p.name = "csendes";
  p.n = n;
  p.lower = constant_vec(n, -0.5);
  p.upper = constant_vec(n, 1.0);
  p.objective = [](const Vec& x) {
    double s = 0.0;
    for (double xi : x) {
      if (xi == 0.0) continue;  // limit value
      s += std::pow(xi, 6) * (2.0 + std::sin(1.0 / xi));
    }
    return s;
  };
  p.known_fstar = 0.0;
  p.known_xstar = constant_vec(n, 0.0);
  p.tags = {ProblemTag::Box, ProblemTag::Symmetric};
  return p;
}

ProblemSpec make_griewank(int n) {
  ProblemSpec p;
  p.name = "griewank";
  p.n = n;
  p.lower = constant_vec(n, -600.0);
  p.upper = constant_vec(n, 700.0);
  p.objective = [](const Vec& x) {
    double s = 0.0, prod = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      s += x[i] * x[i] / 4000.0;
      prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s - prod + 1.0;
  };
  p.known_fstar = 0.0;
  p.known_xstar = constant_vec(n, 0.0);
  p.tags = {ProblemTag::Box};
  return p;
}

ProblemSpec make_rastrigin(int n) {
  ProblemSpec p;
  p.name = "rastrigin";
  p.n = n;
  p.lower = constant_vec(n, -5.12);
  p.upper = constant_vec(n, 6.12);
  p.objective = [](const Vec& x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double xi : x) s += xi * xi - 10.0 * std::cos(2.0 * kPi * xi);
    return s;
  };
  p.known_fstar = 0.0;
  p.known_xstar = constant_vec(n, 0.0);
  p.tags = {ProblemTag::Box, ProblemTag::Symmetric};
  return p;
}

ProblemSpec make_levy(int n) {
  ProblemSpec p;
  p.name = "levy";
  p.n = n;
  p.lower = constant_vec(n, -10.0);
  p.upper = constant_vec(n, 10.0);
  p.objective = [](const Vec& x) {
    auto w = [&](Eigen::Index i) { return 1.0 + (x[i] - 1.0) / 4.0; };
    const Eigen::Index m = x.size();
    double s = std::pow(std::sin(kPi * w(0)), 2);
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
      const double wi = w(i);
      s += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * std::pow(std::sin(kPi * wi + 1.0), 2));
    }
    const double wn = w(m - 1);
    s += (wn - 1.0) * (wn - 1.0) * (1.0 + std::pow(std::sin(2.0 * kPi * wn), 2));
    return s;
  };
  p.known_fstar = 0.0;
  p.known_xstar = constant_vec(n, 1.0);
  p.tags = {ProblemTag::Box};
  return p;
}

// ---------------------------------------------------------------------------
// Fixed-dimension box classics
// ---------------------------------------------------------------------------

ProblemSpec make_branin() {
  ProblemSpec p;
  p.name = "branin";
  p.n = 2;
  p.lower = make_vec({-5.0, 0.0});
  p.upper = make_vec({10.0, 15.0});
  p.objective = [](const Vec& x) {
    const double b = 5.1 / (4.0 * kPi * kPi), c = 5.0 / kPi;
    const double t = 1.0 / (8.0 * kPi);
    const double u = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
    return u * u + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
  };
  p.known_fstar = 5.0 / (4.0 * kPi);
  p.known_xstar = make_vec({kPi, 2.275});
  p.tags = {ProblemTag::Box};
  return p;
}

ProblemSpec make_goldstein_price() {
  ProblemSpec p;
  p.name = "goldstein_price";
  p.n = 2;
  p.lower = constant_vec(2, -2.0);
  p.upper = constant_vec(2, 2.0);
  p.objective = [](const Vec& v) {
    const double x = v[0], y = v[1];
    const double t1 = 1.0 + (x + y + 1.0) * (x + y + 1.0) *
                                (19.0 - 14.0 * x + 3.0 * x * x - 14.0 * y + 6.0 * x * y + 3.0 * y * y);
    const double t2 = 30.0 + (2.0 * x - 3.0 * y) * (2.0 * x - 3.0 * y) *
                                 (18.0 - 32.0 * x + 12.0 * x * x + 48.0 * y - 36.0 * x * y + 27.0 * y * y);
    return t1 * t2;
  };
  p.known_fstar = 3.0;
  p.known_xstar = make_vec({0.0, -1.0});
  p.tags = {ProblemTag::Box};
  return p;
}

ProblemSpec make_six_hump_camel() {
  ProblemSpec p;
  p.name = "six_hump_camel";
  p.n = 2;
  p.lower = make_vec({-3.0, -2.0});
  p.upper = make_vec({3.0, 2.0});
  p.objective = [](const Vec& v) {
    const double x = v[0], y = v[1];
    return (4.0 - 2.1 * x * x + std::pow(x, 4) / 3.0) * x * x + x * y + (-4.0 + 4.0 * y * y) * y * y;
  };
  p.known_fstar = -1.0316284534898774;
  p.known_xstar = make_vec({0.08984201368301331, -0.7126564032704135});
  p.tags = {ProblemTag::Box};
  return p;
}

ProblemSpec make_booth() {
  ProblemSpec p;
  p.name = "booth";
  p.n = 2;
  p.lower = constant_vec(2, -10.0);
  p.upper = constant_vec(2, 10.0);
  p.objective = [](const Vec& v) {
    const double a = v[0] + 2.0 * v[1] - 7.0;
    const double b = 2.0 * v[0] + v[1] - 5.0;
    return a * a + b * b;
  };
  p.known_fstar = 0.0;
  p.known_xstar = make_vec({1.0, 3.0});
  p.tags = {ProblemTag::Box};
  return p;
}

ProblemSpec make_bohachevsky1() {
  ProblemSpec p;
  p.name = "bohachevsky1";
  p.n = 2;
  p.lower = constant_vec(2, -100.0);
  p.upper = constant_vec(2, 110.0);
  p.objective = [](const Vec& v) {
    const double x = v[0], y = v[1];
    return x * x + 2.0 * y * y - 0.3 * std::cos(3.0 * kPi * x) - 0.4 * std::cos(4.0 * kPi * y) + 0.7;
  };
  p.known_fstar = 0.0;
  p.known_xstar = constant_vec(2, 0.0);
  p.tags = {ProblemTag::Box};
  return p;
}

ProblemSpec make_hartman3() {
  ProblemSpec p;
  p.name = "hartman3";
  p.n = 3;
  p.lower = constant_vec(3, 0.0);
  p.upper = constant_vec(3, 1.0);
  p.objective = [](const Vec& x) {
    static const double A[4][3] = {{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}};
    static const double c[4] = {1.0, 1.2, 3.0, 3.2};
    static const double P[4][3] = {{0.3689, 0.1170, 0.2673},
                                   {0.4699, 0.4387, 0.7470},
                                   {0.1091, 0.8732, 0.5547},
                                   {0.03815, 0.5743, 0.8828}};
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
      double e = 0.0;
      for (int j = 0; j < 3; ++j) e += A[i][j] * (x[j] - P[i][j]) * (x[j] - P[i][j]);
      s -= c[i] * std::exp(-e);
    }
    return s;
  };
  p.known_fstar = -3.8627821478207554;
  p.known_xstar = make_vec({0.11461434336000682, 0.5556488474121093, 0.8525469523162843});
  p.tags = {ProblemTag::Box};
  return p;
}

ProblemSpec make_hartman6() {
  ProblemSpec p;
  p.name = "hartman6";
  p.n = 6;
  p.lower = constant_vec(6, 0.0);
  p.upper = constant_vec(6, 1.0);
  p.objective = [](const Vec& x) {
    static const double A[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                   {0.05, 10, 17, 0.1, 8, 14},
                                   {3, 3.5, 1.7, 10, 17, 8},
                                   {17, 8, 0.05, 10, 0.1, 14}};
    static const double c[4] = {1.0, 1.2, 3.0, 3.2};
    static const double P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                   {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                   {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                   {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
      double e = 0.0;
      for (int j = 0; j < 6; ++j) e += A[i][j] * (x[j] - P[i][j]) * (x[j] - P[i][j]);
      s -= c[i] * std::exp(-e);
    }
    return s;
  };
  p.known_fstar = -3.322368011415511;
  p.known_xstar = make_vec({0.20168951100810995, 0.15001069181869445, 0.4768739742141428,
                            0.27533243049129573, 0.3116516166017299, 0.6573005340667769});
  p.tags = {ProblemTag::Box};
  return p;
}

ProblemSpec make_shekel(int m) {
  ProblemSpec p;
  p.name = "shekel" + std::to_string(m);
  p.n = 4;
  p.lower = constant_vec(4, 0.0);
  p.upper = constant_vec(4, 10.0);
  p.objective = [m](const Vec& x) {
    static const double C[4][10] = {{4, 1, 8, 6, 3, 2, 5, 8, 6, 7},
                                    {4, 1, 8, 6, 7, 9, 3, 1, 2, 3.6},
                                    {4, 1, 8, 6, 3, 2, 5, 8, 6, 7},
                                    {4, 1, 8, 6, 7, 9, 3, 1, 2, 3.6}};
    static const double beta[10] = {0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      double d = beta[i];
      for (int j = 0; j < 4; ++j) d += (x[j] - C[j][i]) * (x[j] - C[j][i]);
      s -= 1.0 / d;
    }
    return s;
  };
  if (m == 5) {
    p.known_fstar = -10.153199679058229;
    p.known_xstar = make_vec({4.0000371539592745, 4.000133275985718, 4.0000371539592745, 4.000133275985718});
  } else if (m == 7) {
    p.known_fstar = -10.402915336777745;
    p.known_xstar = make_vec({4.000572818517684, 3.999606211185456, 4.000572818517684, 3.999606211185456});
  } else {
    p.known_fstar = -10.536443153483532;
    p.known_xstar = make_vec({4.000746865940094, 3.9995094781829041, 4.000746865940094, 3.9995094781829041});
  }
  p.tags = {ProblemTag::Box};
  return p;
}

// ---------------------------------------------------------------------------
// Linearly constrained classics
// ---------------------------------------------------------------------------

void set_linear_system(ProblemSpec& p, const Eigen::MatrixXd& A, const Vec& b) {
  p.linear_ineq = LinearSystem{A, b};
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Eigen::RowVectorXd row = A.row(i);
    const double bi = b[i];
    p.ineq_constraints.push_back([row, bi](const Vec& x) { return row.dot(x) - bi; });
  }
}

ProblemSpec make_hs021() {
  ProblemSpec p;
  p.name = "hs021";
  p.n = 2;
  p.lower = make_vec({2.0, -50.0});
  p.upper = make_vec({50.0, 50.0});
  p.objective = [](const Vec& x) { return 0.01 * x[0] * x[0] + x[1] * x[1] - 100.0; };
  Eigen::MatrixXd A(1, 2);
  A << -10.0, 1.0;  // 10 x1 - x2 >= 10
  set_linear_system(p, A, make_vec({-10.0}));
  p.known_fstar = -99.96;
  p.known_xstar = make_vec({2.0, 0.0});
  p.tags = {ProblemTag::Linear};
  return p;
}

ProblemSpec make_hs024() {
  ProblemSpec p;
  p.name = "hs024";
  p.n = 2;
  p.lower = constant_vec(2, 0.0);
  p.upper = constant_vec(2, 5.0);
  const double s3 = std::sqrt(3.0);
  p.objective = [s3](const Vec& x) {
    return ((x[0] - 3.0) * (x[0] - 3.0) - 9.0) * x[1] * x[1] * x[1] / (27.0 * s3);
  };
  Eigen::MatrixXd A(3, 2);
  A << -1.0 / s3, 1.0,  // x2 <= x1/sqrt(3)
      -1.0, -s3,        // x1 + sqrt(3) x2 >= 0
      1.0, s3;          // x1 + sqrt(3) x2 <= 6
  set_linear_system(p, A, make_vec({0.0, 0.0, 6.0}));
  p.known_fstar = -1.0;
  p.known_xstar = make_vec({3.0, s3});
  p.active_constraints = {0, 2};
  p.tags = {ProblemTag::Linear};
  return p;
}

ProblemSpec make_s224() {
  ProblemSpec p;
  p.name = "s224";
  p.n = 2;
  p.lower = constant_vec(2, 0.0);
  p.upper = constant_vec(2, 6.0);
  p.objective = [](const Vec& x) {
    return 2.0 * x[0] * x[0] + x[1] * x[1] - 48.0 * x[0] - 40.0 * x[1];
  };
  Eigen::MatrixXd A(4, 2);
  A << -1.0, -3.0,  // x1 + 3 x2 >= 0
      1.0, 3.0,     // x1 + 3 x2 <= 18
      -1.0, -1.0,   // x1 + x2 >= 0
      1.0, 1.0;     // x1 + x2 <= 8
  set_linear_system(p, A, make_vec({0.0, 18.0, 0.0, 8.0}));
  p.known_fstar = -304.0;
  p.known_xstar = make_vec({4.0, 4.0});
  p.active_constraints = {3};
  p.tags = {ProblemTag::Linear};
  return p;
}

// ---------------------------------------------------------------------------
// Generally constrained classics
// ---------------------------------------------------------------------------

ProblemSpec make_g06() {
  ProblemSpec p;
  p.name = "g06";
  p.n = 2;
  p.lower = make_vec({13.0, 0.0});
  p.upper = make_vec({100.0, 100.0});
  p.objective = [](const Vec& x) {
    return std::pow(x[0] - 10.0, 3) + std::pow(x[1] - 20.0, 3);
  };
  p.ineq_constraints = {
      [](const Vec& x) { return -(x[0] - 5.0) * (x[0] - 5.0) - (x[1] - 5.0) * (x[1] - 5.0) + 100.0; },
      [](const Vec& x) { return (x[0] - 6.0) * (x[0] - 6.0) + (x[1] - 5.0) * (x[1] - 5.0) - 82.81; }};
  p.known_fstar = -6961.813875580138;
  p.known_xstar = make_vec({14.095, 0.8429607892154795});
  p.active_constraints = {0, 1};
  p.tags = {ProblemTag::Nonlinear};
  return p;
}

ProblemSpec make_g08() {
  ProblemSpec p;
  p.name = "g08";
  p.n = 2;
  p.lower = constant_vec(2, 1e-5);
  p.upper = constant_vec(2, 10.0);
  p.objective = [](const Vec& x) {
    const double num = std::pow(std::sin(2.0 * kPi * x[0]), 3) * std::sin(2.0 * kPi * x[1]);
    return -num / (std::pow(x[0], 3) * (x[0] + x[1]));
  };
  p.ineq_constraints = {[](const Vec& x) { return x[0] * x[0] - x[1] + 1.0; },
                        [](const Vec& x) { return 1.0 - x[0] + (x[1] - 4.0) * (x[1] - 4.0); }};
  p.known_fstar = -0.09582504141803719;
  p.known_xstar = make_vec({1.227971352986696, 4.245373366516403});
  p.tags = {ProblemTag::Nonlinear};
  return p;
}

ProblemSpec make_g11() {
  ProblemSpec p;
  p.name = "g11";
  p.n = 2;
  p.lower = constant_vec(2, -1.0);
  p.upper = constant_vec(2, 1.0);
  p.objective = [](const Vec& x) { return x[0] * x[0] + (x[1] - 1.0) * (x[1] - 1.0); };
  p.eq_constraints = {[](const Vec& x) { return x[1] - x[0] * x[0]; }};
  p.known_fstar = 0.75;
  p.known_xstar = make_vec({std::sqrt(0.5), 0.5});
  p.tags = {ProblemTag::Nonlinear, ProblemTag::Equality};
  return p;
}

// ---------------------------------------------------------------------------
// Engineering design problems
// ---------------------------------------------------------------------------

ProblemSpec make_tension_spring() {
  ProblemSpec p;
  p.name = "tension_spring";
  p.n = 3;
  p.lower = make_vec({0.05, 0.25, 2.0});
  p.upper = make_vec({0.2, 1.3, 15.0});
  p.objective = [](const Vec& x) { return x[0] * x[0] * x[1] * (x[2] + 2.0); };
  p.ineq_constraints = {
      [](const Vec& x) { return 1.0 - x[1] * x[1] * x[1] * x[2] / (71875.0 * std::pow(x[0], 4)); },
      [](const Vec& x) {
        return x[1] * (4.0 * x[1] - x[0]) / (12566.0 * std::pow(x[0], 3) * (x[1] - x[0])) +
               2.46 / (12566.0 * x[0] * x[0]) - 1.0;
      },
      [](const Vec& x) { return 1.0 - 140.54 * x[0] / (x[2] * x[1] * x[1]); },
      [](const Vec& x) { return (x[0] + x[1]) / 1.5 - 1.0; }};
  p.known_fstar = 0.01267931;
  p.known_xstar = make_vec({0.05170517, 0.35710042, 11.28120672});
  p.active_constraints = {0, 1};
  p.tags = {ProblemTag::Nonlinear, ProblemTag::Engineering};
  return p;
}

ProblemSpec make_three_bar_truss() {
  ProblemSpec p;
  p.name = "three_bar_truss";
  p.n = 2;
  p.lower = constant_vec(2, 0.0);
  p.upper = constant_vec(2, 1.0);
  const double s2 = std::sqrt(2.0);
  p.objective = [s2](const Vec& x) { return 100.0 * (2.0 * s2 * x[0] + x[1]); };
  p.ineq_constraints = {
      [s2](const Vec& x) {
        return (s2 * x[0] + x[1]) / (s2 * x[0] * x[0] + 2.0 * x[0] * x[1]) * 2.0 - 2.0;
      },
      [s2](const Vec& x) { return x[1] / (s2 * x[0] * x[0] + 2.0 * x[0] * x[1]) * 2.0 - 2.0; },
      [s2](const Vec& x) { return 1.0 / (x[0] + s2 * x[1]) * 2.0 - 2.0; }};
  p.known_fstar = 263.89584535;
  p.known_xstar = make_vec({0.78867512416221186, 0.40824832});
  p.active_constraints = {0};
  p.tags = {ProblemTag::Nonlinear, ProblemTag::Engineering};
  return p;
}

ProblemSpec make_speed_reducer() {
  ProblemSpec p;
  p.name = "speed_reducer";
  p.n = 7;
  p.lower = make_vec({2.6, 0.7, 17.0, 7.3, 7.8, 2.9, 5.0});
  p.upper = make_vec({3.6, 0.8, 28.0, 8.3, 8.3, 3.9, 5.5});
  p.objective = [](const Vec& x) {
    return 0.7854 * x[0] * x[1] * x[1] * (3.3333 * x[2] * x[2] + 14.9334 * x[2] - 43.0934) -
           1.508 * x[0] * (x[5] * x[5] + x[6] * x[6]) +
           7.4777 * (std::pow(x[5], 3) + std::pow(x[6], 3)) +
           0.7854 * (x[3] * x[5] * x[5] + x[4] * x[6] * x[6]);
  };
  p.ineq_constraints = {
      [](const Vec& x) { return 27.0 / (x[0] * x[1] * x[1] * x[2]) - 1.0; },
      [](const Vec& x) { return 397.5 / (x[0] * x[1] * x[1] * x[2] * x[2]) - 1.0; },
      [](const Vec& x) { return 1.93 * std::pow(x[3], 3) / (x[1] * x[2] * std::pow(x[5], 4)) - 1.0; },
      [](const Vec& x) { return 1.93 * std::pow(x[4], 3) / (x[1] * x[2] * std::pow(x[6], 4)) - 1.0; },
      [](const Vec& x) {
        const double t = 745.0 * x[3] / (x[1] * x[2]);
        return std::sqrt(t * t + 16.9e6) / (110.0 * std::pow(x[5], 3)) - 1.0;
      },
      [](const Vec& x) {
        const double t = 745.0 * x[4] / (x[1] * x[2]);
        return std::sqrt(t * t + 157.5e6) / (85.0 * std::pow(x[6], 3)) - 1.0;
      },
      [](const Vec& x) { return x[1] * x[2] / 40.0 - 1.0; },
      [](const Vec& x) { return 5.0 * x[1] / x[0] - 1.0; },
      [](const Vec& x) { return x[0] / (12.0 * x[1]) - 1.0; },
      [](const Vec& x) { return (1.5 * x[5] + 1.9) / x[3] - 1.0; },
      [](const Vec& x) { return (1.1 * x[6] + 1.9) / x[4] - 1.0; }};
  p.known_fstar = 2996.34817613;
  p.known_xstar = make_vec({3.5, 0.7, 17.0, 7.3, 7.8, 3.35021468, 5.28668323});
  p.active_constraints = {4, 5, 7};
  p.tags = {ProblemTag::Nonlinear, ProblemTag::Engineering};
  return p;
}

ProblemSpec make_pressure_vessel() {
  ProblemSpec p;
  p.name = "pressure_vessel";
  p.n = 4;
  p.lower = make_vec({1.0, 0.625, 25.0, 25.0});
  p.upper = make_vec({1.375, 1.0, 150.0, 240.0});
  p.objective = [](const Vec& x) {
    return 0.6224 * x[0] * x[2] * x[3] + 1.7781 * x[1] * x[2] * x[2] +
           3.1661 * x[0] * x[0] * x[3] + 19.84 * x[0] * x[0] * x[2];
  };
  p.ineq_constraints = {
      [](const Vec& x) { return -x[0] + 0.0193 * x[2]; },
      [](const Vec& x) { return -x[1] + 0.00954 * x[2]; },
      [](const Vec& x) {
        return -kPi * x[2] * x[2] * x[3] - 4.0 / 3.0 * kPi * std::pow(x[2], 3) + 1296000.0;
      },
      [](const Vec& x) { return x[3] - 240.0; },
      [](const Vec& x) { return 1.1 - x[0]; },
      [](const Vec& x) { return 0.6 - x[1]; }};
  p.known_fstar = 7163.73957163;
  p.known_xstar = make_vec({1.1, 0.625, 56.994818652849744, 51.00125173390984});
  p.active_constraints = {0, 2, 4};
  p.tags = {ProblemTag::Nonlinear, ProblemTag::Engineering};
  return p;
}

ProblemSpec make_welded_beam() {
  ProblemSpec p;
  p.name = "welded_beam";
  p.n = 4;
  p.lower = constant_vec(4, 0.1);
  p.upper = make_vec({2.0, 10.0, 10.0, 2.0});
  constexpr double P = 6000.0, L = 14.0, E = 3e7, G = 12e6;
  auto tau = [](const Vec& x) {
    const double tau1 = P / (std::sqrt(2.0) * x[0] * x[1]);
    const double M = P * (L + x[1] / 2.0);
    const double R = std::sqrt(x[1] * x[1] / 4.0 + (x[0] + x[2]) * (x[0] + x[2]) / 4.0);
    const double J =
        2.0 * (std::sqrt(2.0) * x[0] * x[1] *
               (x[1] * x[1] / 12.0 + (x[0] + x[2]) * (x[0] + x[2]) / 4.0));
    const double tau2 = M * R / J;
    return std::sqrt(tau1 * tau1 + tau1 * tau2 * x[1] / R + tau2 * tau2);
  };
  auto sigma = [](const Vec& x) { return 6.0 * P * L / (x[3] * x[2] * x[2]); };
  auto deflect = [](const Vec& x) { return 4.0 * P * std::pow(L, 3) / (E * x[3] * std::pow(x[2], 3)); };
  auto buckling = [](const Vec& x) {
    return 4.013 * E * std::sqrt(x[2] * x[2] * std::pow(x[3], 6) / 36.0) / (L * L) *
           (1.0 - x[2] / (2.0 * L) * std::sqrt(E / (4.0 * G)));
  };
  p.objective = [](const Vec& x) {
    return 1.10471 * x[0] * x[0] * x[1] + 0.04811 * x[2] * x[3] * (14.0 + x[1]);
  };
  p.ineq_constraints = {
      [tau](const Vec& x) { return tau(x) - 13600.0; },
      [sigma](const Vec& x) { return sigma(x) - 30000.0; },
      [](const Vec& x) { return x[0] - x[3]; },
      [](const Vec& x) { return 0.10471 * x[0] * x[0] + 0.04811 * x[2] * x[3] * (14.0 + x[1]) - 5.0; },
      [deflect](const Vec& x) { return deflect(x) - 0.25; },
      [buckling](const Vec& x) { return P - buckling(x); },
      [](const Vec& x) { return 0.125 - x[0]; }};
  p.known_fstar = 1.72488430;
  p.known_xstar = make_vec({0.20572551, 3.47062057, 9.03666456, 0.20573141});
  p.active_constraints = {2};
  p.tags = {ProblemTag::Nonlinear, ProblemTag::Engineering};
  return p;
}

RegressionConfig regression_case(int s, int T) {
  RegressionConfig cfg;
  cfg.s = s;
  cfg.T = T;
  switch (s) {
    case 1:
      cfg.d = {-0.2};
      cfg.omega = {0.4};
      cfg.theta = {0.3};
      break;
    case 2:
      cfg.d = {-0.2, -0.3};
      cfg.omega = {0.4, 0.3};
      cfg.theta = {0.3, 0.1};
      break;
    default:
      cfg.d = {-0.4, -0.3, -0.2};
      cfg.omega = {0.6, 0.3, 0.4};
      cfg.theta = {0.2, 0.1, 0.3};
      break;
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

using Factory = std::function<ProblemSpec(std::optional<int>)>;

ProblemSpec fixed(ProblemSpec spec, std::optional<int> n) {
  if (n && *n != spec.n)
    throw DomainError(spec.name + " is fixed at n = " + std::to_string(spec.n));
  return spec;
}

int scalable_dim(const std::optional<int>& n, int min_n, const std::string& name) {
  const int dim = n.value_or(std::max(2, min_n));
  require(dim >= min_n && dim <= 100, name + ": unsupported dimension " + std::to_string(dim));
  return dim;
}

const std::map<std::string, Factory>& registry() {
  static const std::map<std::string, Factory> reg = [] {
    std::map<std::string, Factory> r;
    auto add_fixed = [&r](ProblemSpec (*make)()) {
      ProblemSpec probe = make();
      r[probe.name] = [make](std::optional<int> n) { return fixed(make(), n); };
    };
    r["rosenbrock"] = [](std::optional<int> n) { return make_rosenbrock(scalable_dim(n, 2, "rosenbrock")); };
    r["alpine"] = [](std::optional<int> n) { return make_alpine(scalable_dim(n, 1, "alpine")); };
    r["csendes"] = [](std::optional<int> n) { return make_csendes(scalable_dim(n, 1, "csendes")); };
    r["griewank"] = [](std::optional<int> n) { return make_griewank(scalable_dim(n, 1, "griewank")); };
    r["rastrigin"] = [](std::optional<int> n) { return make_rastrigin(scalable_dim(n, 1, "rastrigin")); };
    r["levy"] = [](std::optional<int> n) { return make_levy(scalable_dim(n, 1, "levy")); };
    add_fixed(make_branin);
    add_fixed(make_goldstein_price);
    add_fixed(make_six_hump_camel);
    add_fixed(make_booth);
    add_fixed(make_bohachevsky1);
    add_fixed(make_hartman3);
    add_fixed(make_hartman6);
    r["shekel5"] = [](std::optional<int> n) { return fixed(make_shekel(5), n); };
    r["shekel7"] = [](std::optional<int> n) { return fixed(make_shekel(7), n); };
    r["shekel10"] = [](std::optional<int> n) { return fixed(make_shekel(10), n); };
    add_fixed(make_hs021);
    add_fixed(make_hs024);
    add_fixed(make_s224);
    add_fixed(make_g06);
    add_fixed(make_g08);
    add_fixed(make_g11);
    add_fixed(make_tension_spring);
    add_fixed(make_three_bar_truss);
    add_fixed(make_speed_reducer);
    add_fixed(make_pressure_vessel);
    add_fixed(make_welded_beam);
    for (int s : {1, 2, 3}) {
      for (int T : {10, 100}) {
        const std::string name = "regression_s" + std::to_string(s) + "_t" + std::to_string(T);
        r[name] = [s, T, name](std::optional<int> n) {
          ProblemSpec p = build_regression_problem(regression_case(s, T));
          p.name = name;
          if (n && *n != p.n) throw DomainError(name + " is fixed at n = " + std::to_string(p.n));
          return p;
        };
      }
    }
    // Hidden-constraint wrappers for every constrained problem.
    std::vector<std::pair<std::string, Factory>> wrappers;
    for (const auto& [name, factory] : r) {
      ProblemSpec probe = factory(std::nullopt);
      if (probe.is_box()) continue;
      wrappers.emplace_back(name + "-hidden", [factory](std::optional<int> n) {
        return hidden_wrapper(factory(n));
      });
    }
    for (auto& w : wrappers) r.insert(std::move(w));
    return r;
  }();
  return reg;
}

void check_bounds(const ProblemSpec& spec, const Vec& x) {
  require(x.size() == spec.n, spec.name + ": point dimension mismatch");
  for (int j = 0; j < spec.n; ++j) {
    const double slack = 1e-12 * (spec.upper[j] - spec.lower[j]);
    if (x[j] < spec.lower[j] - slack || x[j] > spec.upper[j] + slack)
      throw DomainError(spec.name + ": point outside bounds on axis " + std::to_string(j));
  }
}

}  // namespace

void ProblemSpec::validate(bool check_optimum) const {
  require(n >= 1, name + ": dimension must be positive");
  require(lower.size() == n && upper.size() == n, name + ": bounds dimension mismatch");
  for (int j = 0; j < n; ++j)
    require(lower[j] < upper[j], name + ": lower must be strictly below upper");
  require(static_cast<bool>(objective), name + ": missing objective");
  if (known_xstar) {
    require(known_xstar->size() == n, name + ": known_xstar dimension mismatch");
    for (int j = 0; j < n; ++j)
      require((*known_xstar)[j] >= lower[j] && (*known_xstar)[j] <= upper[j],
              name + ": known_xstar outside bounds");
    if (known_fstar && check_optimum) {
      const double f = objective(*known_xstar);
      require(std::abs(f - *known_fstar) <= 1e-6 * std::max(1.0, std::abs(*known_fstar)),
              name + ": objective(known_xstar) does not match known_fstar");
    }
  }
  if (has_tag(ProblemTag::Box))
    require(ineq_constraints.empty() && eq_constraints.empty(), name + ": box problem carries constraints");
}

ProblemSpec lookup_problem(const std::string& name, std::optional<int> n) {
  const auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw DomainError("unknown problem: " + name);
  ProblemSpec spec = it->second(n);
  spec.validate();
  return spec;
}

std::vector<std::string> registered_problems() {
  std::vector<std::string> names;
  for (const auto& [name, factory] : registry()) names.push_back(name);
  return names;
}

double evaluate_objective(const ProblemSpec& spec, const Vec& x) {
  check_bounds(spec, x);
  if (spec.hidden_oracle && !spec.hidden_oracle(x)) return kInfeasibleValue;
  return spec.objective(x);
}

std::pair<std::vector<double>, std::vector<double>> evaluate_constraints(const ProblemSpec& spec,
                                                                         const Vec& x) {
  check_bounds(spec, x);
  std::vector<double> g, h;
  g.reserve(spec.ineq_constraints.size());
  h.reserve(spec.eq_constraints.size());
  for (const auto& gi : spec.ineq_constraints) g.push_back(gi(x));
  for (const auto& hi : spec.eq_constraints) h.push_back(hi(x));
  return {std::move(g), std::move(h)};
}

ProblemSpec transform_equalities(const ProblemSpec& spec, double eps_h) {
  require(eps_h > 0.0, "transform_equalities: eps_h must be positive");
  if (spec.eq_constraints.empty()) return spec;
  ProblemSpec out = spec;
  out.eq_constraints.clear();
  for (const auto& hi : spec.eq_constraints) {
    out.ineq_constraints.push_back([hi, eps_h](const Vec& x) { return std::abs(hi(x)) - eps_h; });
  }
  out.linear_ineq.reset();  // |h| is not affine
  out.active_constraints.clear();
  return out;
}

bool hidden_feasibility(const ProblemSpec& spec, const Vec& x) {
  if (spec.hidden_oracle) return spec.hidden_oracle(x);
  for (const auto& gi : spec.ineq_constraints)
    if (gi(x) > 0.0) return false;
  for (const auto& hi : spec.eq_constraints)
    if (hi(x) != 0.0) return false;
  return true;
}

ProblemSpec hidden_wrapper(const ProblemSpec& spec) {
  ProblemSpec out;
  out.name = spec.name + "-hidden";
  out.n = spec.n;
  out.lower = spec.lower;
  out.upper = spec.upper;
  out.objective = spec.objective;
  out.known_fstar = spec.known_fstar;
  out.known_xstar = spec.known_xstar;
  out.tags = spec.tags;
  auto ineq = spec.ineq_constraints;
  auto eq = spec.eq_constraints;
  out.hidden_oracle = [ineq, eq](const Vec& x) {
    for (const auto& gi : ineq)
      if (gi(x) > 0.0) return false;
    for (const auto& hi : eq)
      if (hi(x) != 0.0) return false;
    return true;
  };
  return out;
}

ProblemSpec build_regression_problem(const RegressionConfig& cfg) {
  require(cfg.s >= 1 && cfg.s <= 3, "regression: s must be 1, 2 or 3");
  require(cfg.T == 10 || cfg.T == 100, "regression: T must be 10 or 100");
  require(static_cast<int>(cfg.d.size()) == cfg.s && static_cast<int>(cfg.omega.size()) == cfg.s &&
              static_cast<int>(cfg.theta.size()) == cfg.s,
          "regression: coefficient count must equal s");
  for (int q = 0; q < cfg.s; ++q) {
    require(cfg.d[q] >= -1.0 && cfg.d[q] <= 0.0, "regression: d out of [-1, 0]");
    require(cfg.omega[q] >= 0.0 && cfg.omega[q] <= 1.0, "regression: omega out of [0, 1]");
    require(cfg.theta[q] >= 0.0 && cfg.theta[q] <= 1.0, "regression: theta out of [0, 1]");
  }
  const int s = cfg.s, T = cfg.T, n = 3 * s;

  // Observed signal at t = 1..T from the generating coefficients.
  std::vector<double> kappa(T);
  for (int t = 1; t <= T; ++t) {
    double v = 0.0;
    for (int q = 0; q < s; ++q)
      v += std::exp(t * cfg.d[q]) * std::sin(2.0 * kPi * t * cfg.omega[q] + cfg.theta[q]);
    kappa[t - 1] = v;
  }

  ProblemSpec p;
  p.name = "regression_s" + std::to_string(s) + "_t" + std::to_string(T);
  p.n = n;
  p.lower = Vec(n);
  p.upper = Vec(n);
  for (int q = 0; q < s; ++q) {
    p.lower[3 * q] = -1.0;
    p.upper[3 * q] = 0.0;
    p.lower[3 * q + 1] = 0.0;
    p.upper[3 * q + 1] = 1.0;
    p.lower[3 * q + 2] = 0.0;
    p.upper[3 * q + 2] = 1.0;
  }
  p.objective = [kappa, s, T](const Vec& x) {
    double sum = 0.0;
    for (int t = 1; t <= T; ++t) {
      double phi = 0.0;
      for (int q = 0; q < s; ++q)
        phi += std::exp(x[3 * q] * t) * std::sin(2.0 * kPi * t * x[3 * q + 1] + x[3 * q + 2]);
      const double r = kappa[t - 1] - phi;
      sum += r * r;
    }
    return sum;
  };
  p.known_fstar = 0.0;
  Vec xstar(n);
  for (int q = 0; q < s; ++q) {
    xstar[3 * q] = cfg.d[q];
    xstar[3 * q + 1] = cfg.omega[q];
    xstar[3 * q + 2] = cfg.theta[q];
  }
  p.known_xstar = xstar;
  p.tags = {ProblemTag::Box, ProblemTag::Engineering};
  return p;
}

ProblemSpec parse_problem_descriptor(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  while (std::getline(in, header)) {
    const auto pos = header.find_first_not_of(" \t\r");
    if (pos != std::string::npos && header[pos] != '#') break;
    header.clear();
  }
  require(!header.empty(), "problem descriptor: missing header line");
  std::istringstream hs(header);
  std::string name;
  hs >> name;
  int n = 0;
  std::optional<int> dim;
  if (hs >> n) dim = n;

  std::vector<std::pair<double, double>> bounds;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    double lo, hi;
    if (ls >> lo >> hi) bounds.emplace_back(lo, hi);
  }
  ProblemSpec spec = lookup_problem(name, dim ? dim : (bounds.empty() ? std::optional<int>()
                                                                      : std::optional<int>(static_cast<int>(bounds.size()))));
  if (!bounds.empty()) {
    require(static_cast<int>(bounds.size()) == spec.n, "problem descriptor: bounds count mismatch");
    for (int j = 0; j < spec.n; ++j) {
      require(bounds[j].first < bounds[j].second, "problem descriptor: lower must be below upper");
      spec.lower[j] = bounds[j].first;
      spec.upper[j] = bounds[j].second;
    }
    // Re-bounding may invalidate optimum metadata.
    if (spec.known_xstar) {
      for (int j = 0; j < spec.n; ++j) {
        if ((*spec.known_xstar)[j] < spec.lower[j] || (*spec.known_xstar)[j] > spec.upper[j]) {
          spec.known_xstar.reset();
          spec.known_fstar.reset();
          break;
        }
      }
    }
  }
  spec.validate();
  return spec;
}

}  // namespace divrect
