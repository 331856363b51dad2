#ifndef NILCERT_VERSION_HPP
#define NILCERT_VERSION_HPP

#define NILCERT_VERSION "0.1.0"

#endif
