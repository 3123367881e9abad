#ifndef leafroot_leafroot_hpp
#define leafroot_leafroot_hpp

// everything: graphs, cotrees, weighted trees, construction, checking, generators
#include "construct.hpp"
#include "cotree.hpp"
#include "gen.hpp"
#include "graph.hpp"
#include "verify.hpp"
#include "wtree.hpp"

#endif
