# region 包说明
# 子包：common / numtheory / graphs / session / oblivious / commitment / zkproof / derived / catalog
__all__ = []
# endregion
