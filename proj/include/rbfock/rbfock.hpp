// Umbrella header: pulls in the whole library.

#ifndef RBFOCK_RBFOCK_HPP
#define RBFOCK_RBFOCK_HPP

#include "csvio.hpp"
#include "hermite.hpp"
#include "kernels.hpp"
#include "numerics.hpp"
#include "operators.hpp"
#include "spaces.hpp"
#include "transforms.hpp"
#include "verify.hpp"

#endif  // RBFOCK_RBFOCK_HPP
