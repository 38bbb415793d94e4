#pragma once

// Security labels {low, high, *} and label-annotated types. The two-point
// lattice is fixed: every operator below is written against it.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gifc {

// Raised on violated preconditions (program defects, not runtime outcomes).
struct ContractError : std::logic_error {
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

enum class Lbl : uint8_t { Low, High, Star };

inline bool is_specific(Lbl l) { return l != Lbl::Star; }

std::string to_string(Lbl l);

// Lattice order on specific labels (low before high). Star is a defect here.
bool label_order(Lbl a, Lbl b);
Lbl label_join(Lbl a, Lbl b);
Lbl label_meet(Lbl a, Lbl b);

// Precision: * below everything, specific labels only below themselves.
bool label_prec(Lbl a, Lbl b);
// Join w.r.t. precision; undefined for two distinct specific labels.
std::optional<Lbl> label_prec_join(Lbl a, Lbl b);
// Consistent join/meet: Star absorbs, otherwise lattice join/meet.
Lbl label_cjoin(Lbl a, Lbl b);
Lbl label_cmeet(Lbl a, Lbl b);
// Consistent subtyping on labels.
bool label_csub(Lbl a, Lbl b);

enum class BaseTy : uint8_t { Unit, Bool };

struct LType;
struct RefData;
struct FunData;

struct RawType {
    std::variant<BaseTy, std::shared_ptr<const RefData>, std::shared_ptr<const FunData>> v;

    RawType() : v(BaseTy::Unit) {}
    explicit RawType(BaseTy b) : v(b) {}

    bool is_base() const { return std::holds_alternative<BaseTy>(v); }
    bool is_ref() const { return std::holds_alternative<std::shared_ptr<const RefData>>(v); }
    bool is_fun() const { return std::holds_alternative<std::shared_ptr<const FunData>>(v); }
    BaseTy base() const { return std::get<BaseTy>(v); }
    const RefData& ref() const { return *std::get<std::shared_ptr<const RefData>>(v); }
    const FunData& fun() const { return *std::get<std::shared_ptr<const FunData>>(v); }
};

struct LType {
    RawType raw;
    Lbl label = Lbl::Low;
};

struct RefData {
    LType inner;
};

struct FunData {
    LType dom;
    Lbl pc = Lbl::Star;
    LType cod;
};

RawType make_ref(LType inner);
RawType make_fun(LType dom, Lbl pc, LType cod);
inline RawType unit_raw() { return RawType(BaseTy::Unit); }
inline RawType bool_raw() { return RawType(BaseTy::Bool); }
inline LType unit_ty(Lbl l) { return LType{unit_raw(), l}; }
inline LType bool_ty(Lbl l) { return LType{bool_raw(), l}; }

bool operator==(const RawType& a, const RawType& b);
inline bool operator!=(const RawType& a, const RawType& b) { return !(a == b); }
bool operator==(const LType& a, const LType& b);
inline bool operator!=(const LType& a, const LType& b) { return !(a == b); }

// Precision on raw types and types.
bool type_prec(const RawType& a, const RawType& b);
bool type_prec(const LType& a, const LType& b);

// Consistent subtyping.
bool type_csub(const RawType& a, const RawType& b);
bool type_csub(const LType& a, const LType& b);

// Join w.r.t. precision; partial.
std::optional<RawType> type_prec_join(const RawType& a, const RawType& b);
std::optional<LType> type_prec_join(const LType& a, const LType& b);

// Consistent join/meet on types; partial (structure mismatch or undefined
// precision join inside a Ref).
std::optional<RawType> type_cjoin(const RawType& a, const RawType& b);
std::optional<LType> type_cjoin(const LType& a, const LType& b);
std::optional<RawType> type_cmeet(const RawType& a, const RawType& b);
std::optional<LType> type_cmeet(const LType& a, const LType& b);

// stamp (T_g1) g2 = T_(g1 cjoin g2)
LType stamp_type(const LType& a, Lbl l);

// Rendering, round-trippable through the surface type parser:
// Bool@low, Unit@*, Ref Bool@high @ low, (Bool@high -[low]-> Bool@low)@low.
std::string to_string(const RawType& t);
std::string to_string(const LType& t);

} // namespace gifc
