#pragma once

// Umbrella header: the whole library in one include.
//
// troplin computes the stable tropical line through two points that arrive as
// columns of a normal idempotent max-plus matrix, and returns it as a metric
// caterpillar tree: spine vertices with exact rational coordinates, leaf
// labels, edge lengths, and the induced bipartitions.  Everything is exact;
// there is no floating point anywhere.

#include "troplin/rational.hpp"
#include "troplin/point.hpp"
#include "troplin/matrix.hpp"
#include "troplin/segment.hpp"
#include "troplin/ni_matrix.hpp"
#include "troplin/diff_matrix.hpp"
#include "troplin/tree.hpp"
#include "troplin/tree_builder.hpp"
#include "troplin/oracle.hpp"
#include "troplin/io.hpp"
