import sys

from loguru import logger
from service.service_data_models.logger_config_data import LoggerConfigData


def config_loggers(in_logger_config: LoggerConfigData):
    logger.remove()
    # stdout carries emitted results
    logger.add(sys.stderr, level=in_logger_config.log_level)
    if in_logger_config.log_file:
        logger.add(in_logger_config.log_file, level=in_logger_config.log_level,
                   rotation="10 MB", retention=10, encoding="utf-8", enqueue=True)
    logger.debug(f"Set log level to {in_logger_config.log_level}")
