import logging

from app.config.settings import settings

_configured = False


def get_logger(name: str) -> logging.Logger:
    """获取日志记录器，首次调用时按配置初始化日志格式

    Args:
        name: 日志记录器名称

    Returns:
        logging.Logger: 日志记录器
    """
    global _configured
    if not _configured:
        level = "DEBUG" if settings.debug else settings.log_level.upper()
        logging.basicConfig(
            level=getattr(logging, level, logging.INFO),
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        )
        _configured = True
    return logging.getLogger(name)
