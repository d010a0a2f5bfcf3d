#pragma once

#include "monoeq/coupling.hpp"
#include "monoeq/decide.hpp"
#include "monoeq/enumerate.hpp"
#include "monoeq/io.hpp"
#include "monoeq/lp.hpp"
#include "monoeq/measures.hpp"
#include "monoeq/patterns.hpp"
#include "monoeq/poset.hpp"
#include "monoeq/random.hpp"
#include "monoeq/rational.hpp"
#include "monoeq/structure.hpp"
#include "monoeq/witness.hpp"
