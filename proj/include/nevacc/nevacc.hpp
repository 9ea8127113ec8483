#ifndef NEVACC_NEVACC_HPP
#define NEVACC_NEVACC_HPP

#include "nevacc/mpnum.hpp"
#include "nevacc/weights.hpp"
#include "nevacc/transforms.hpp"
#include "nevacc/asymptotics.hpp"
#include "nevacc/special.hpp"
#include "nevacc/catalog.hpp"
#include "nevacc/report.hpp"

#endif // NEVACC_NEVACC_HPP
