# region 项目日志
import logging

from .paths import PROJECT_NAME

logger = logging.getLogger(PROJECT_NAME)
# endregion
