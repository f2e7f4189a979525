#pragma once

#include <iosfwd>

#include "gridcast/neural/network.h"

namespace gridcast::neural {

/// Text model format, one token group per line:
///
///   gridcast-network 1
///   input_channels <n>
///   input_steps <n>
///   conv <filters> <kernel> <pool> | conv none
///   lstm <units> | lstm none
///   dense <count>
///   layer <units> <linear|tanh|leaky_relu>      (count lines)
///   params <count>
///   param <name> <rows> <cols>                   followed by rows lines of cols values
///   end
///
/// Values are written in shortest round-trip form, so save/load is bit-exact.
void save_network(const Network& network, std::ostream& out);
Network load_network(std::istream& in);

} // namespace gridcast::neural
