#include "zonoreach/identify.hpp"

#include "zonoreach/numerics.hpp"

namespace zonoreach {

TrueSystem::TrueSystem(Matrix A_in, Matrix B_in, Zonotope noise_in)
    : A(std::move(A_in)), B(std::move(B_in)), noise(std::move(noise_in)) {
  require_dims(A.rows() == A.cols(), "TrueSystem: A must be square.");
  require_dims(B.rows() == A.rows(), "TrueSystem: B rows must match A.");
  require_dims(noise.dim() == A.rows(), "TrueSystem: noise dimension must match A.");
  require_param(is_finite(A) && is_finite(B), "TrueSystem: entries must be finite.");
}

void DataSet::append(const DataSet& other) {
  require_dims(Xminus.rows() == other.Xminus.rows() && Uminus.rows() == other.Uminus.rows(),
               "DataSet::append: dimensions must match.");
  const auto glue = [](Matrix& a, const Matrix& b) {
    Matrix joined(a.rows(), a.cols() + b.cols());
    joined << a, b;
    a = std::move(joined);
  };
  glue(Xminus, other.Xminus);
  glue(Xplus, other.Xplus);
  glue(Uminus, other.Uminus);
  glue(noise, other.noise);
  experiment_lengths.insert(experiment_lengths.end(), other.experiment_lengths.begin(),
                            other.experiment_lengths.end());
}

DataSet simulate(const TrueSystem& system, const Vector& x0, const Matrix& inputs,
                 Rng& rng) {
  require_dims(x0.size() == system.state_dim(), "simulate: x0 dimension must match the system.");
  require_dims(inputs.rows() == system.input_dim(), "simulate: input rows must match the system.");
  require_param(inputs.cols() >= 1, "simulate: at least one step is required.");
  const int n = system.state_dim();
  const int steps = static_cast<int>(inputs.cols());

  DataSet data;
  data.Xminus = Matrix(n, steps);
  data.Xplus = Matrix(n, steps);
  data.Uminus = inputs;
  data.noise = Matrix(n, steps);
  data.experiment_lengths = {steps};

  Vector x = x0;
  for (int k = 0; k < steps; ++k) {
    const Vector w = sample(system.noise, rng);
    data.Xminus.col(k) = x;
    data.noise.col(k) = w;
    x = system.A * x + system.B * inputs.col(k) + w;
    data.Xplus.col(k) = x;
  }
  return data;
}

DataSet generate_data(const TrueSystem& system, const Zonotope& X0, const Zonotope& U,
                      const DataPlan& plan) {
  require_param(plan.experiments >= 1 && plan.samples_per_experiment >= 1,
                "generate_data: plan sizes must be positive.");
  require_dims(X0.dim() == system.state_dim(), "generate_data: X0 must match the system.");
  require_dims(U.dim() == system.input_dim(), "generate_data: U must match the system.");
  const Zonotope& excitation = plan.input_range.dim() > 0 ? plan.input_range : U;
  require_dims(excitation.dim() == system.input_dim(),
               "generate_data: input range must match the system input dimension.");

  DataSet all;
  for (int e = 0; e < plan.experiments; ++e) {
    Rng rng(Rng::derive(plan.seed, static_cast<std::uint64_t>(e)));
    const Vector x0 = sample(X0, rng);
    Matrix inputs(system.input_dim(), plan.samples_per_experiment);
    for (int k = 0; k < plan.samples_per_experiment; ++k) {
      inputs.col(k) = sample(excitation, rng);
    }
    DataSet one = simulate(system, x0, inputs, rng);
    if (e == 0) {
      all = std::move(one);
    } else {
      all.append(one);
    }
  }
  return all;
}

IdentifiedModel identify(const DataSet& data, const Zonotope& noise_model) {
  const int n = static_cast<int>(data.Xplus.rows());
  const int m = static_cast<int>(data.Uminus.rows());
  const int t = data.total_samples();
  require_dims(data.Xplus.cols() == t && data.Uminus.cols() == t,
               "identify: sample counts must agree across data blocks.");
  require_dims(noise_model.dim() == n, "identify: noise model dimension must match the data.");
  require_param(t >= 1, "identify: at least one sample is required.");

  Matrix D(n + m, t);
  D << data.Xminus, data.Uminus;
  const SvdResult dec = svd(D);
  const double sigma_max = dec.sigma.size() > 0 ? dec.sigma(0) : 0.0;
  const double sigma_min =
      dec.sigma.size() >= n + m ? dec.sigma(n + m - 1) : 0.0;  // below full row rank
  if (sigma_min <= 1e-8 * sigma_max || sigma_max == 0.0) {
    throw ParameterError(
        "identify: data matrix [Xminus; Uminus] is rank-deficient; "
        "collect more samples or excite the system further.");
  }
  const Matrix H = pinv(D);

  // Center: noise-center-corrected least squares fit.
  const Matrix C =
      (data.Xplus - noise_model.center * Matrix::Ones(1, t)) * H;

  std::vector<Vector> left;
  left.reserve(static_cast<std::size_t>(noise_model.generator_count()));
  for (int i = 0; i < noise_model.generator_count(); ++i) {
    left.push_back(noise_model.generators.col(i));
  }
  std::vector<Vector> right;
  right.reserve(static_cast<std::size_t>(t));
  for (int j = 0; j < t; ++j) right.push_back(H.row(j).transpose());

  IdentifiedModel model;
  model.msigma = MatrixZonotope::rank_one(C, std::move(left), std::move(right));
  model.H = H;
  model.sigma_ratio = sigma_min / sigma_max;
  return model;
}

MembershipResult membership_diagnostic(const IdentifiedModel& model,
                                       const Matrix& candidate, double tol) {
  require_dims(candidate.rows() == model.msigma.rows() &&
                   candidate.cols() == model.msigma.cols(),
               "membership_diagnostic: candidate shape must match the model set.");
  const int gamma = model.msigma.generator_count();
  const Eigen::Index entries = candidate.size();

  Matrix gen_mat(entries, gamma);
  for (int k = 0; k < gamma; ++k) {
    const Matrix G = model.msigma.generator(k);
    gen_mat.col(k) = Eigen::Map<const Vector>(G.data(), entries);
  }
  const Matrix diff = candidate - model.msigma.center();
  const Vector rhs = Eigen::Map<const Vector>(diff.data(), entries);

  MembershipResult out;
  if (gamma == 0) {
    out.residual = rhs.size() > 0 ? rhs.cwiseAbs().maxCoeff() : 0.0;
    out.member = out.residual <= tol;
    return out;
  }
  const Matrix gen_pinv = pinv(gen_mat);
  Vector beta = gen_pinv * rhs;
  out.max_abs_coeff = beta.cwiseAbs().maxCoeff();
  out.residual = (gen_mat * beta - rhs).cwiseAbs().maxCoeff();

  // The minimum-norm solution is only one point of the solution space; when
  // it overshoots the coefficient box, look for a box-respecting certificate
  // by alternating projections between the box and the solution space.  A
  // candidate is declared a member only once an explicit certificate is in
  // hand, so rejections stay sound; the loop merely removes false negatives.
  if (out.residual <= tol && out.max_abs_coeff > 1.0 + tol) {
    for (int iter = 0; iter < 2000; ++iter) {
      beta = beta.cwiseMax(-1.0).cwiseMin(1.0);
      beta -= gen_pinv * (gen_mat * beta - rhs);
      if (beta.cwiseAbs().maxCoeff() <= 1.0 + tol) break;
    }
    const double refined_residual = (gen_mat * beta - rhs).cwiseAbs().maxCoeff();
    const double refined_max = beta.cwiseAbs().maxCoeff();
    if (refined_residual <= tol && refined_max <= 1.0 + tol) {
      out.residual = refined_residual;
      out.max_abs_coeff = refined_max;
    }
  }
  out.member = out.residual <= tol && out.max_abs_coeff <= 1.0 + tol;
  return out;
}

}  // namespace zonoreach
