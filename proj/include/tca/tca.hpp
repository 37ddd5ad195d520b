#pragma once
// Everything: root data, Chevalley bases, folding, current algebras, envelopes,
// identities, affine Demazure characters and modules.

#include "affine_demazure.hpp"
#include "identities.hpp"
#include "modules.hpp"
