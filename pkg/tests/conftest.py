# keeps the tests directory importable for the shared util module
