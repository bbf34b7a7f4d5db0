#ifndef NILCOHOM_CLI_HPP
#define NILCOHOM_CLI_HPP

#include <ostream>

namespace nilcohom {

// Exit codes: 0 ok, 1 hypothesis refusal, 2 usage or parse error, 3 a checked invariant failed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nilcohom

#endif
