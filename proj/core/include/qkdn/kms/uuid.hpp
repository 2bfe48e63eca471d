#pragma once

#include <string>
#include <string_view>

#include "qkdn/crypto/rng.hpp"

namespace qkdn::kms {

/// Random (version 4, RFC 4122 variant) UUID in canonical lowercase form.
std::string uuid_v4(crypto::Rng& rng);

bool is_uuid(std::string_view text);

}  // namespace qkdn::kms
