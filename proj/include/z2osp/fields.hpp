#pragma once

#include "z2osp/generator.hpp"
#include "z2osp/grade.hpp"

// Field names shared by the hierarchy, Miura and charge modules. Every call
// registers on first use and afterwards returns the same id, so translation
// units can use them in any order.
namespace z2osp::fields {

inline uint32_t phi00() { return FieldRegistry::instance().register_field("phi00", g00); }
inline uint32_t phi11() { return FieldRegistry::instance().register_field("phi11", g11); }
inline uint32_t sigma10() { return FieldRegistry::instance().register_field("sigma10", g10); }
inline uint32_t sigma01() { return FieldRegistry::instance().register_field("sigma01", g01); }
inline uint32_t rho10() { return FieldRegistry::instance().register_field("rho10", g10); }
inline uint32_t rho01() { return FieldRegistry::instance().register_field("rho01", g01); }

inline uint32_t u00() { return FieldRegistry::instance().register_field("u00", g00); }
inline uint32_t u11() { return FieldRegistry::instance().register_field("u11", g11); }
inline uint32_t cap_u00() { return FieldRegistry::instance().register_field("U00", g00); }
inline uint32_t cap_u11() { return FieldRegistry::instance().register_field("U11", g11); }

// chiral prefactors of the two exponential source terms
inline uint32_t kplus() { return FieldRegistry::instance().register_field("kplus", g00); }
inline uint32_t kminus() { return FieldRegistry::instance().register_field("kminus", g00); }

}  // namespace z2osp::fields
