#ifndef APOLAR_APOLAR_HPP
#define APOLAR_APOLAR_HPP

#include "apolar/constructions.hpp"
#include "apolar/field.hpp"
#include "apolar/field_mode.hpp"
#include "apolar/form.hpp"
#include "apolar/hvector.hpp"
#include "apolar/inverse_system.hpp"
#include "apolar/matrix.hpp"
#include "apolar/monomial.hpp"
#include "apolar/param_matrix.hpp"
#include "apolar/random.hpp"
#include "apolar/recipe.hpp"
#include "apolar/wlp.hpp"

#endif  // APOLAR_APOLAR_HPP
