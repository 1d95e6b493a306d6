#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "varleb/constants.hpp"
#include "varleb/report.hpp"
#include "varleb/vnorm.hpp"

namespace varleb {

// Symmetric positive definite m x m samples on a lattice, point-major with
// row-major blocks.
struct MatrixField {
  Lattice lat;
  int m = 1;
  std::vector<double> a;

  Eigen::MatrixXd at(long i) const;
  void set(long i, const Eigen::MatrixXd& mat);
};

// Validates symmetry and that eigenvalues stay above the positivity floor.
MatrixField make_matrix_field(
    const Lattice& lat, int m,
    const std::function<Eigen::MatrixXd(std::array<double, 3>)>& f,
    const Constants& cst = {});

MatrixField matrix_from_scalar(const SampledField& w);

// spectral norm of a general square matrix
double op_norm(const Eigen::MatrixXd& a);
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a, double floor = 0.0);
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& a, double floor = 0.0);

// normalized directional norm: || |W(.)z| 1_Q || / ||1_Q||
double rho_q(const MatrixField& w, const ExponentProfile& prof, const Cube& q,
             const Eigen::VectorXd& z, const Constants& cst = {});

// deterministic well-spread unit vectors (golden-angle circle, Fibonacci
// sphere, seeded Gaussians above dimension three)
std::vector<Eigen::VectorXd> probe_directions(int m, int count);

// |W(x) z| as a scalar field
SampledField scalar_projection(const MatrixField& w, const Eigen::VectorXd& z);
// ||W(x) M|| as a scalar field
SampledField scalar_projection_mat(const MatrixField& w,
                                   const Eigen::MatrixXd& m);

// SPD A with |A z| matching the directional norms over the probe set. The
// Gram matrix is fitted to the probes in log scale; ratios outside the
// budget slack * (2m+1)^max(0, 1/p_- - 1) are an error carrying the worst
// direction.
struct ReducingResult {
  Eigen::MatrixXd a;
  Eigen::MatrixXd gram;
  double fit_lo = 0.0;   // min over probes of |A z| / rho(z)
  double fit_hi = 0.0;   // max
  int iterations = 0;
  int worst_direction = -1;
};
ReducingResult reducing_operator(const MatrixField& w,
                                 const ExponentProfile& prof, const Cube& q,
                                 int num_directions, const Constants& cst = {});

// Gram matrix of the minimum-volume origin-symmetric ellipsoid holding
// every +-point; cross-check oracle for the fitted reducing operators
Eigen::MatrixXd mvee_oracle(const std::vector<Eigen::VectorXd>& points,
                            double tol = 1e-7);

// min/max over probes of |A^{-1} z| against exp(mean_y log |W^{-1}(y) z|)
std::pair<double, double> inverse_reducing_check(const MatrixField& w,
                                                 const ExponentProfile& prof,
                                                 const Cube& q,
                                                 const Eigen::MatrixXd& a,
                                                 int num_directions,
                                                 const Constants& cst = {});

struct MatrixCubeValue {
  double value = 0.0;
  long stride = 1;  // subsampling used for the quadratic-cost loop
};

// exp of the mean over y of log of the normalized norm of ||W(.)W^{-1}(y)||
MatrixCubeValue matrix_apinfty_cube_value(const MatrixField& w,
                                          const ExponentProfile& prof,
                                          const Cube& q,
                                          const Constants& cst = {});
// exp of the mean over y of log of the mean over x of ||W(x)W^{-1}(y)||
MatrixCubeValue matrix_a1infty_cube_value(const MatrixField& w, const Cube& q,
                                          const Constants& cst = {});
// |Q|^(-1) times the norm in x of the conjugate norm in y of ||W(x)W^{-1}(y)||
MatrixCubeValue matrix_apvar_cube_value(const MatrixField& w,
                                        const ExponentProfile& prof,
                                        const ExponentProfile& conj,
                                        const Cube& q,
                                        const Constants& cst = {});

// shared kernel of the log-mean values: y averaged over avg_cube, the
// normalized norm taken over norm_cube (equal cubes give the third value
// above); the dilation profiles build on this
MatrixCubeValue matrix_mixed_cube_value(const MatrixField& w,
                                        const ExponentProfile& prof,
                                        const Cube& norm_cube,
                                        const Cube& avg_cube,
                                        const Constants& cst = {});

enum class MatrixKind { apvar, apinfty, a1infty };

std::string to_string(MatrixKind k);

CubeReport matrix_family_constant(MatrixKind kind, const MatrixField& w,
                                  const ExponentProfile& prof,
                                  const CubeFamily& fam,
                                  const Constants& cst = {});

// Normalized norm of ||W(.)M|| at r*p(.) against c_mult * est^a_exp times
// the normalized norm at p(.), per cube and test matrix. An empty list uses
// the identity, W^{-1} at the cube center, and two seeded rotations.
CubeReport matrix_rh_verify(const MatrixField& w, const ExponentProfile& prof,
                            double r, const CubeFamily& fam,
                            const std::vector<Eigen::MatrixXd>& test_matrices,
                            double est, const Constants& cst = {});

// normalized norm of ||W(.)M|| against its plain mean, per cube and matrix
CubeReport wm_reverse_check(const MatrixField& w, const ExponentProfile& prof,
                            const CubeFamily& fam,
                            const std::vector<Eigen::MatrixXd>& test_matrices,
                            const Constants& cst = {});

}  // namespace varleb
