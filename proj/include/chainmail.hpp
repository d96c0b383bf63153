#pragma once

#include "chainmail/canonical.hpp"
#include "chainmail/category.hpp"
#include "chainmail/chainmail.hpp"
#include "chainmail/config.hpp"
#include "chainmail/element_set.hpp"
#include "chainmail/enumeration.hpp"
#include "chainmail/error.hpp"
#include "chainmail/io.hpp"
#include "chainmail/lattice.hpp"
#include "chainmail/poset.hpp"
#include "chainmail/sources.hpp"
#include "chainmail/verify.hpp"
