#ifndef GOSSIP_VERSION_HPP
#define GOSSIP_VERSION_HPP

namespace gossip {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace gossip

#endif
