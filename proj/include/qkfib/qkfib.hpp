#pragma once

#include "qkfib/params.hpp"
#include "qkfib/exact.hpp"
#include "qkfib/poly.hpp"
#include "qkfib/bigfloat.hpp"
#include "qkfib/dyadic.hpp"
#include "qkfib/complex.hpp"
#include "qkfib/roots.hpp"
#include "qkfib/binet.hpp"
#include "qkfib/lawcheck.hpp"
#include "qkfib/output.hpp"
