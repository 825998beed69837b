#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crt/manifold.hpp"
#include "crt/mapping.hpp"

namespace crt {
namespace dsl {

struct Pos {
    int line = 0;
    int col = 0;
};

/// Expression AST of the manifest language. Variables stay unresolved
/// strings until lowering, which interprets them against the declared
/// dimensions and mode.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, ImagUnit, Var, Call, Conj, Re, Im, Add, Sub, Mul, Neg, Pow };
    Kind kind;
    Pos pos;
    Rational number{0};
    std::string name;          // Var base name or Call target
    int exponent = 0;          // Pow
    std::vector<ExprPtr> kids; // operands / call argument
};

struct SeriesDef {
    std::string label; // "rho", "Q", "F" or "G"
    int index = 0;     // 0 = unindexed
    ExprPtr expr;
    Pos pos;
};

struct ImplicitDecl {
    std::string name;
    ExprPtr lhs;
    ExprPtr rhs;
    Pos pos;
};

struct ManifoldDecl {
    std::string name;
    int n = -1;
    int d = -1;
    bool normal_form = false; // Q definitions instead of rho definitions
    std::vector<SeriesDef> defs;
    Pos pos;
};

struct MapDecl {
    std::string name;
    std::string src;
    std::string tgt;
    std::vector<SeriesDef> fs;
    std::vector<SeriesDef> gs;
    Pos pos;
};

struct TaskDecl {
    std::string op;
    std::vector<std::string> args;
    Pos pos;
};

struct Manifest {
    int order = 0; // 0 = not declared
    std::vector<ImplicitDecl> implicits;
    std::vector<ManifoldDecl> manifolds;
    std::optional<MapDecl> map;
    std::vector<TaskDecl> tasks;
};

/// Parses manifest text; SyntaxError diagnostics carry line:col positions.
Manifest parse(std::string_view text);

/// Canonical pretty-print; pretty(parse(t)) reparses to an identical AST.
std::string pretty(const Manifest& m);
std::string pretty(const Expr& e);

enum class LowerMode { RealDefining, NormalQ, MapComponent, ImplicitBody };

struct LowerCtx {
    SpacePtr space;
    int order = 0;
    LowerMode mode = LowerMode::RealDefining;
    int n = 0;
    int d = 0;
    std::string implicit_name;                   // ImplicitBody only
    const std::map<std::string, Jet>* implicits = nullptr;
};

/// Complexified lowering: conj(z) -> chi, conj(w) -> tau, Re/Im expand to
/// half-sums with the bar image, literals stay exact.
Jet lower(const Expr& e, const LowerCtx& ctx);

SpacePtr real_defining_space(int n, int d);

struct BuiltManifold {
    std::string name;
    GenericManifold manifold;
    std::vector<Jet> change; // normalizing coordinate change over (z, w)
    bool from_real_defining = false;
};

struct BuiltMap {
    std::string name;
    int src = 0;
    int tgt = 0;
    FormalMap map;
};

struct Instance {
    int order = 0;
    std::vector<BuiltManifold> manifolds;
    std::optional<BuiltMap> map;
    std::vector<TaskDecl> tasks;
};

/// Lowers and solves a parsed manifest into validated manifolds and the
/// optional map. Real defining declarations are complexified, solved for
/// w and normalized; the map is conjugated by the normalizing changes so
/// it acts between the normalized models.
Instance build_instance(const Manifest& m, int order_override = 0, int default_order = 8);

} // namespace dsl
} // namespace crt
