#ifndef NPA_PARSER_HPP
#define NPA_PARSER_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "npa/algebra.hpp"
#include "npa/localization.hpp"
#include "npa/tensor.hpp"

namespace npa {

// Expression grammar of the surface syntax:
//   expr   := sign? term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' NAT)?
//   atom   := RATIONAL | GEN | '(' expr ')'
//           | 'ox' '(' expr ',' expr ')'           (tensor algebras)
//           | 'inv' '(' expr ')'                   (localized algebras)
//   GEN    := ('p'|'q'|'x'|'y') NAT?               (index defaults to 1)
// Products are written explicitly with '*' and keep their source order, so
// non-commutative input normal-orders predictably.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ")"),
          line_(line),
          col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

Element parse_element(const std::string& src, const AlgebraPtr& alg);

// Tensor-aware parse: ox(a, b) reads its arguments in the factor algebras.
Element parse_element(const std::string& src, const TensorAlgebraSpec& tensor);

// Localized parse: inv(g)^k denotes g^{-k}; the inv argument must be a power
// of the localization base.
LocElement parse_loc_element(const std::string& src, const LocAlgebraPtr& loc);

// Algebra descriptor strings: weyl:n | sympoly:n | tensor(SPEC,SPEC) |
// sympoly:n@loc=EXPR.
struct ParsedAlgebra {
    AlgebraPtr alg;  // element algebra; the combined one for tensors
    std::optional<TensorAlgebraSpec> tensor;
    LocAlgebraPtr loc;
    std::string canonical;
};

ParsedAlgebra parse_algebra_spec(const std::string& spec);

}  // namespace npa

#endif
