#ifndef LEVELBOUND_ERRORS_HPP
#define LEVELBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace levelbound {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define LB_DEFINE_ERROR(Name) \
    struct Name : error { \
        explicit Name(const std::string& what = #Name) : error(what) {} \
    }

LB_DEFINE_ERROR(NotMonic);
LB_DEFINE_ERROR(DegreeUnsupported);
LB_DEFINE_ERROR(IndexDivisor);
LB_DEFINE_ERROR(DiscUncertain);
LB_DEFINE_ERROR(DegreeMismatch);
LB_DEFINE_ERROR(UnsupportedDegree);
LB_DEFINE_ERROR(DenominatorPrimeTooLarge);
LB_DEFINE_ERROR(SingularCurve);
LB_DEFINE_ERROR(BadReduction);
LB_DEFINE_ERROR(PrimeTooLarge);
LB_DEFINE_ERROR(UnsupportedPrime);
LB_DEFINE_ERROR(FieldTooLarge);
LB_DEFINE_ERROR(PreconditionUnmet);
LB_DEFINE_ERROR(DuplicateLabel);

#undef LB_DEFINE_ERROR

// carries a witness factor of the reducible polynomial
struct Reducible : error {
    std::string witness;
    explicit Reducible(std::string w)
        : error("Reducible: witness factor " + w), witness(std::move(w)) {}
};

struct ParseError : error {
    int line;
    ParseError(int line_, const std::string& reason)
        : error("parse error at line " + std::to_string(line_) + ": " + reason),
          line(line_) {}
};

} // namespace levelbound

#endif
