#ifndef PACT_PACT_HPP
#define PACT_PACT_HPP

#include "pact/carrier.hpp"
#include "pact/certificate.hpp"
#include "pact/commensuration.hpp"
#include "pact/error.hpp"
#include "pact/examples.hpp"
#include "pact/finite_space.hpp"
#include "pact/fq.hpp"
#include "pact/globalization.hpp"
#include "pact/group.hpp"
#include "pact/instance.hpp"
#include "pact/noetherian_core.hpp"
#include "pact/orbit.hpp"
#include "pact/partial_action.hpp"
#include "pact/partial_bijection.hpp"
#include "pact/point_set.hpp"
#include "pact/regularization.hpp"
#include "pact/verify.hpp"
#include "pact/zset.hpp"

#endif
