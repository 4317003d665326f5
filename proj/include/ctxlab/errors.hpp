#pragma once

#include <stdexcept>
#include <string>

namespace ctxlab {

// Exit-code contract: parse = 2, precondition = 3, cap = 4.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionError : std::runtime_error {
    std::string code;  // stable machine-readable tag, e.g. "LoopCollapse"
    PreconditionError(std::string code_, const std::string& what)
        : std::runtime_error(code_ + ": " + what), code(std::move(code_)) {}
};

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error("TooLarge: " + what) {}
};

inline PreconditionError err_loop_collapse(const std::string& w) { return {"LoopCollapse", w}; }
inline PreconditionError err_unknown_edge(const std::string& w) { return {"UnknownEdge", w}; }
inline PreconditionError err_even_minus(const std::string& w) { return {"EvenMinusCount", w}; }
inline PreconditionError err_arity(const std::string& w) { return {"WrongOutcomeArity", w}; }
inline PreconditionError err_not_composable(const std::string& w) { return {"NotComposable", w}; }
inline PreconditionError err_margin(const std::string& w) { return {"MarginMismatch", w}; }
inline PreconditionError err_not_subcomplex(const std::string& w) { return {"NotASubcomplex", w}; }
inline PreconditionError err_not_collapsible(const std::string& w) { return {"NotCollapsible", w}; }
inline PreconditionError err_not_invariant(const std::string& w) { return {"NotInvariant", w}; }
inline PreconditionError err_null_homotopic(const std::string& w) { return {"NullHomotopicInput", w}; }
inline PreconditionError err_non_prime(const std::string& w) { return {"NonPrimeD", w}; }
inline PreconditionError err_not_connected(const std::string& w) { return {"NotConnected", w}; }
inline PreconditionError err_semiring(const std::string& w) { return {"WrongSemiring", w}; }

}  // namespace ctxlab
