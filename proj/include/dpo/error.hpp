#ifndef DPO_ERROR_HPP
#define DPO_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent caller input (ring mismatch, unknown name, bad dimension).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A symbolic computation hit its configured work limit before finishing.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, std::size_t spent)
      : Error(what), spent_(spent) {}
  std::size_t spent() const { return spent_; }

 private:
  std::size_t spent_;
};

/// An implicit step did not converge; usually the step size is too large.
class StepFailure : public Error {
 public:
  StepFailure(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class NoReturn : public Error {
 public:
  using Error::Error;
};

}  // namespace dpo

#endif  // DPO_ERROR_HPP
