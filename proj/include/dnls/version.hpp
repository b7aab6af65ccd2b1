#pragma once

#define DNLS_VERSION "0.1.0"
