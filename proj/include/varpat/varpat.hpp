#ifndef VARPAT_VARPAT_HPP
#define VARPAT_VARPAT_HPP

#include "varpat/core.hpp"
#include "varpat/lcs_index.hpp"
#include "varpat/regular.hpp"
#include "varpat/unary.hpp"
#include "varpat/noncross.hpp"
#include "varpat/classify.hpp"
#include "varpat/onerep.hpp"
#include "varpat/klocal.hpp"
#include "varpat/oracle.hpp"
#include "varpat/io.hpp"
#include "varpat/hardness.hpp"
#include "varpat/random.hpp"

#endif
