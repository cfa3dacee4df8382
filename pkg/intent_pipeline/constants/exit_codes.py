EXIT_SUCCESS = 0
EXIT_CONFIG_ERROR = 2
EXIT_DATA_ERROR = 3
EXIT_GENERATION_ERROR = 4
