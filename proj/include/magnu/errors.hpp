#ifndef MAGNU_ERRORS_HPP
#define MAGNU_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace magnu {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define MAGNU_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                        \
    public:                                                             \
        explicit Name(const std::string& msg = #Name) : Error(msg) {}   \
    }

MAGNU_DEFINE_ERROR(ParseError);
MAGNU_DEFINE_ERROR(SelfLoop);
MAGNU_DEFINE_ERROR(DuplicateEdge);
MAGNU_DEFINE_ERROR(VertexOutOfRange);
MAGNU_DEFINE_ERROR(DisconnectedGraph);
MAGNU_DEFINE_ERROR(SizeMismatch);
MAGNU_DEFINE_ERROR(NotAWalk);
MAGNU_DEFINE_ERROR(NotASignature);
MAGNU_DEFINE_ERROR(NotHermitian);
MAGNU_DEFINE_ERROR(ZeroVector);
MAGNU_DEFINE_ERROR(BettiTooLarge);
MAGNU_DEFINE_ERROR(BadSize);
MAGNU_DEFINE_ERROR(NotATree);
MAGNU_DEFINE_ERROR(NotAForest);
MAGNU_DEFINE_ERROR(NoEdges);
MAGNU_DEFINE_ERROR(EmptySubgraph);
MAGNU_DEFINE_ERROR(GirthTooSmall);
MAGNU_DEFINE_ERROR(NotRegular);
MAGNU_DEFINE_ERROR(BoundViolation);
MAGNU_DEFINE_ERROR(EdgeExists);
MAGNU_DEFINE_ERROR(NoSuchEdge);
MAGNU_DEFINE_ERROR(NotNeighborSubset);
MAGNU_DEFINE_ERROR(NotSkValued);
MAGNU_DEFINE_ERROR(WrongBetti);
MAGNU_DEFINE_ERROR(AssertionFailure);

#undef MAGNU_DEFINE_ERROR

} // namespace magnu

#endif // MAGNU_ERRORS_HPP
