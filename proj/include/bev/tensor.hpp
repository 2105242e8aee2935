#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace bev {

using Shape = std::vector<std::size_t>;

std::string shape_str(const Shape& s);
std::size_t shape_size(const Shape& s);

class Tensor;

// One reverse-mode tape entry: the op that produced a tensor, the tensors it
// consumed, and a closure that pushes the output gradient into the inputs.
struct TapeNode {
  const char* op = "";
  std::vector<Tensor> inputs;
  std::function<void(const class TensorImpl&)> backward;
};

class TensorImpl {
 public:
  Shape shape;
  std::vector<double> data;   // row-major, size == product(shape)
  std::vector<double> grad;   // same length as data iff requires_grad
  bool requires_grad = false;
  std::unique_ptr<TapeNode> node;  // null for leaves
};

// Dense double-precision tensor. Cheap shared handle; ops build a tape so
// backward() can fill gradients.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape);
  static Tensor full(Shape shape, double value);
  static Tensor from_data(Shape shape, std::vector<double> data);
  static Tensor scalar(double value);

  bool defined() const { return impl_ != nullptr; }
  const Shape& shape() const { return impl_->shape; }
  std::size_t rank() const { return impl_->shape.size(); }
  std::size_t size() const { return impl_->data.size(); }

  double* data() { return impl_->data.data(); }
  const double* data() const { return impl_->data.data(); }
  std::vector<double>& vec() { return impl_->data; }
  const std::vector<double>& vec() const { return impl_->data; }

  double item() const;                       // scalar tensors only
  double at(std::initializer_list<std::size_t> idx) const;

  bool requires_grad() const { return impl_->requires_grad; }
  Tensor& set_requires_grad(bool on);        // leaf marking
  const std::vector<double>& grad() const { return impl_->grad; }
  std::vector<double>& grad() { return impl_->grad; }
  void zero_grad();

  // Value copy with no graph attachment; gradients never flow through.
  Tensor detach() const;
  Tensor clone() const;  // deep copy, keeps leaf/requires_grad status

  TensorImpl* impl() const { return impl_.get(); }

  static Tensor make(Shape shape, std::vector<double> data, bool requires_grad,
                     std::unique_ptr<TapeNode> node);

 private:
  explicit Tensor(std::shared_ptr<TensorImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<TensorImpl> impl_;
};

enum class Reduce { Max, Mean, Sum };

// ---- elementwise ----
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor div(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& x, double c);
Tensor relu(const Tensor& x);
Tensor sigmoid(const Tensor& x);
Tensor log_t(const Tensor& x);
Tensor clamp(const Tensor& x, double lo, double hi);
// Quadratic inside |x| < beta, linear outside.
Tensor smooth_l1(const Tensor& x, double beta);

// ---- broadcast patterns the model needs ----
Tensor add_rowvec(const Tensor& x, const Tensor& v);  // x[RxC] + v[C] per row
Tensor mul_rowvec(const Tensor& x, const Tensor& v);  // x[RxC] * v[C] per row
Tensor mul_colvec(const Tensor& x, const Tensor& v);  // x[RxC] * v[R] per col

// ---- linear algebra ----
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& x);  // rank-2
Tensor conv2d(const Tensor& x, const Tensor& w, std::size_t stride,
              std::size_t pad);  // x[HxWxCin], w[kh x kw x Cin x Cout]
Tensor upsample2x(const Tensor& x);  // nearest neighbor, x[HxWxC]

// ---- shape ----
Tensor reshape(const Tensor& x, Shape shape);
Tensor concat(const Tensor& a, const Tensor& b, std::size_t axis);

// ---- normalization & reductions ----
Tensor softmax(const Tensor& x, std::size_t axis);
Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                  std::size_t axis, double eps);
Tensor reduce(const Tensor& x, std::size_t axis, Reduce kind);
Tensor sum_all(const Tensor& x);
Tensor mean_all(const Tensor& x);
// Per-row negative log softmax probability of the labeled class.
Tensor nll_rows(const Tensor& logits, const std::vector<std::size_t>& labels);

// Reverse-mode sweep from a scalar loss. Interior gradients are reset per
// call; leaf gradients accumulate across calls.
void backward(const Tensor& loss);

// Max-reduce tie instrumentation for the finite-difference oracle: while
// enabled, any max slice whose top two values sit within eps is counted.
void set_max_tie_tracking(double eps);  // eps <= 0 disables
std::size_t max_tie_events();
void reset_max_tie_events();

struct GradcheckReport {
  double max_rel_err = 0.0;
  std::size_t checked = 0;
  std::size_t excluded_ties = 0;
  std::string worst;  // coordinate of the largest error
  bool pass(double tol) const { return checked > 0 && max_rel_err < tol; }
};

// Central finite differences against the analytic gradient for a
// scalar-valued function of the given inputs. Coordinates whose perturbed
// evaluations hit a max-reduce tie are excluded and counted.
GradcheckReport gradcheck(
    const std::function<Tensor(const std::vector<Tensor>&)>& f,
    std::vector<Tensor> inputs, double h = 1e-5, double scale_floor = 1e-5,
    double tie_eps = 0.0);

}  // namespace bev
