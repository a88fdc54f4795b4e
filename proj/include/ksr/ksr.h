#ifndef KSR_H_
#define KSR_H_
#endif
