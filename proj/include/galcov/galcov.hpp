#pragma once

#include "analysis.hpp"
#include "bigraph.hpp"
#include "bimodule.hpp"
#include "complex.hpp"
#include "covering.hpp"
#include "document.hpp"
#include "errors.hpp"
#include "homotopy.hpp"
#include "presentation.hpp"
#include "tits_form.hpp"
#include "walk.hpp"
